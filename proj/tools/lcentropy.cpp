#include <iostream>
#include <string>
#include <vector>

#include "lcentropy/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lcentropy::run(args, std::cout, std::cerr);
}
