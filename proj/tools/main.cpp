#include <iostream>

#include "cfckit_cli.hpp"

int main(int argc, char** argv) { return cfckit::cli::run(argc, argv, std::cout, std::cerr); }
