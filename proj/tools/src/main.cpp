#include <iostream>

#include "nrlab_cli/commands.hpp"

int main(int argc, char** argv) { return nrlab::cli::run(argc, argv, std::cout, std::cerr); }
