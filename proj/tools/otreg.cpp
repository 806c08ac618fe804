#include <iostream>

#include "otreg/cli.hpp"

int main(int argc, char** argv) {
    return otreg::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
