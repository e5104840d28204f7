#include <iostream>
#include <vector>

#include "hessian/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hessian::run_cli(args, std::cout, std::cerr);
}
