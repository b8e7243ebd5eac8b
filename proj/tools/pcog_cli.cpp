#include <iostream>

#include "pcog/cli.hpp"

int main(int argc, char** argv) { return pcog::cli::run(argc, argv, std::cout, std::cerr); }
