// cli_app.hpp — Command-line front end (validate / eval / sweep / threshold /
// dilate). Factored out of main() so tests can drive it against string
// streams. Exit codes: 0 success, 1 domain or negative result, 2 usage or
// parse error, 3 I/O error.

#pragma once

#include <iosfwd>

namespace gaussact::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gaussact::cli
