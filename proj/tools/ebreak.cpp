#include <iostream>

#include "ebreak/cli.hpp"

int main(int argc, char** argv) { return ebreak::cli::run_cli(argc, argv, std::cout, std::cerr); }
