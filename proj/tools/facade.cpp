#include <iostream>

#include "facade/cli.hpp"

int main(int argc, char** argv) { return facade::run_cli(argc, argv, std::cout, std::cerr); }
