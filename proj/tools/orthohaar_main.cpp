#include "orthohaar/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return orthohaar::run_cli(argc, argv, std::cout, std::cerr); }
