#include <iostream>
#include <string>
#include <vector>

#include "qsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qsim::cli::run(args, std::cout, std::cerr);
}
