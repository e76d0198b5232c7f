#include <iostream>

#include "grouplab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return grouplab::cli::run(args, std::cout, std::cerr);
}
