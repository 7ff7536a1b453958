#include <iostream>

#include "polarity_mc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return polarity_mc::run(args, std::cout, std::cerr);
}
