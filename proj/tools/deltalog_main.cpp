#include <iostream>
#include <string>
#include <vector>

#include "deltalog/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return deltalog::run(args, std::cout, std::cerr);
}
