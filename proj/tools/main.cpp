#include <iostream>

#include "sigmapart/cli.hpp"

int main(int argc, char** argv) { return sigmapart::run_cli(argc, argv, std::cout, std::cerr); }
