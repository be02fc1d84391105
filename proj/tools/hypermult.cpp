#include <iostream>
#include <string>
#include <vector>

#include "hypermult/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hypermult::cli::run_cli(args, std::cout, std::cerr);
}
