#include <iostream>

#include "threshkit/cli.hpp"

int main(int argc, char** argv) { return threshkit::cli::main(argc, argv, std::cout, std::cerr); }
