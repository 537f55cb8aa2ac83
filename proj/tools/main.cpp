#include <iostream>

#include "freearr/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return freearr::cli::run(args, std::cout, std::cerr);
}
