#include <iostream>
#include <string>
#include <vector>

#include "rtadapt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return rtadapt::cli::run(args, std::cout, std::cerr);
}
