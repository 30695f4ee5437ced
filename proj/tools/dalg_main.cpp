#include <iostream>
#include <string>
#include <vector>

#include "dalg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dalg::cli_run(args, std::cout, std::cerr);
}
