#include <iostream>

#include "asics/cli.hpp"

int main(int argc, char** argv) { return asics::cli::run(argc, argv, std::cout, std::cerr); }
