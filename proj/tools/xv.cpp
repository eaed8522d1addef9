#include <iostream>

#include "xv/cli.hpp"

int main(int argc, char** argv) { return xv::cli::run_cli(argc, argv, std::cout, std::cerr); }
