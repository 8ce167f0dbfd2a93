#include <iostream>
#include <vector>

#include "bowlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bowlab::cli_run(args, std::cout, std::cerr);
}
