#include <iostream>
#include <string>
#include <vector>

#include "oapl/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return oapl::cli::run(args, std::cout, std::cerr);
}
