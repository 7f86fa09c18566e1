#include <iostream>

#include "closure_lab/cli.hpp"

int main(int argc, char** argv) { return closure_lab::run_cli(argc, argv, std::cout, std::cerr); }
