#include <iostream>
#include <string>
#include <vector>

#include "crunchfx/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return crunchfx::dispatch(args, std::cout, std::cerr);
}
