#include "evocat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return evocat::cli::main(argc, argv, std::cin, std::cout, std::cerr); }
