#include <iostream>

#include "schanuel/cli.hpp"

int main(int argc, char** argv) { return schanuel::run_cli(argc, argv, std::cout, std::cerr); }
