#include <iostream>

#include "dgbdt/cli.hpp"

int main(int argc, char** argv) { return dgbdt::cli::run(argc, argv, std::cout, std::cerr); }
