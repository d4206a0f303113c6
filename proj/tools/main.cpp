#include <iostream>

#include "mmwsim/cli.hpp"

int main(int argc, char** argv) { return mmwsim::run_cli(argc, argv, std::cout, std::cerr); }
