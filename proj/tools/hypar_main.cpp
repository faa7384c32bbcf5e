#include <iostream>

#include "hypar/cli.hpp"

int main(int argc, char** argv) { return hypar::cli::run(argc, argv, std::cout, std::cerr); }
