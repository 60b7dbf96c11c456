#include <iostream>

#include "gsops_cli/cli.hpp"

int main(int argc, char** argv) { return gsops::cli::main_entry(argc, argv, std::cout, std::cerr); }
