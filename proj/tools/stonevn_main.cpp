#include <iostream>
#include <string>
#include <vector>

#include "stonevn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return stonevn::run_cli(args, std::cout, std::cerr);
}
