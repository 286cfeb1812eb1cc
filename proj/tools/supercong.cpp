#include <iostream>

#include "supercong/cli.hpp"

int main(int argc, char** argv) {
    return supercong::cli::run(argc, argv, std::cout, std::cerr);
}
