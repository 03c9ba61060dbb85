#include <iostream>

#include "statgeo/cli.hpp"

int main(int argc, char** argv) { return statgeo::cli::run(argc, argv, std::cout, std::cerr); }
