#include <iostream>

#include "rhinar/cli.hpp"

int main(int argc, char** argv) { return rhinar::cli::run(argc, argv, std::cout, std::cerr); }
