#include <iostream>

#include "hspace33/cli.hpp"

int main(int argc, char** argv) { return h33::run_cli(argc, argv, std::cout, std::cerr); }
