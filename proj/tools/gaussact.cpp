#include <iostream>

#include "gaussact/cli_app.hpp"

int main(int argc, char** argv) {
    return gaussact::cli::run(argc, argv, std::cout, std::cerr);
}
