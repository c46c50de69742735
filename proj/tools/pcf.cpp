#include <iostream>

#include "pcf/cli/cli.hpp"

int main(int argc, char** argv) { return pcf::cli::run(argc, argv, std::cout, std::cerr); }
