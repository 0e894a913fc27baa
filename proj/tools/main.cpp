#include <iostream>

#include "romanoff/cli.hpp"

int main(int argc, char** argv) {
    return romanoff::cli::run(argc, argv, std::cout, std::cerr);
}
