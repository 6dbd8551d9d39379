#include <iostream>
#include <string>
#include <vector>

#include "hcmc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hcmc::cli_main(args, std::cout, std::cerr);
}
