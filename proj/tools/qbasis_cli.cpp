#include <iostream>

#include "qbasis/cli.hpp"

int main(int argc, char** argv) { return qbasis::run_cli(argc, argv, std::cout, std::cerr); }
