#include <iostream>

#include "kv/io/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return kv::run_cli(args, std::cout, std::cerr);
}
