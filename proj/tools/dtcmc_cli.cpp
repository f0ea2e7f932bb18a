#include <iostream>

#include "dtcmc/cli.hpp"

int main(int argc, char** argv) { return dtcmc::run_cli(argc, argv, std::cout, std::cerr); }
