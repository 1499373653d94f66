#include <iostream>
#include <string>
#include <vector>

#include "cmcomp/harness.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cmcomp::run_cli(args, std::cout, std::cerr);
}
