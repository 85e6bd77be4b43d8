#include <iostream>
#include <string>
#include <vector>

#include "fuzzylex/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fuzzylex::cli::run(std::move(args), std::cout, std::cerr);
}
