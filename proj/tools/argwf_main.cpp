#include <iostream>

#include "argwf/cli.hpp"

int main(int argc, char** argv) { return argwf::run_cli(argc, argv, std::cout, std::cerr); }
