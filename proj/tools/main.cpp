#include <iostream>
#include <string>
#include <vector>

#include "graphcohom/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return gcoh::run_cli(args, std::cout, std::cerr);
}
