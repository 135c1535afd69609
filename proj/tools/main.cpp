#include <iostream>

#include "palintiple/cli.hpp"

int main(int argc, char** argv) { return pal::run_cli(argc, argv, std::cout, std::cerr); }
