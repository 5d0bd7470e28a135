#include <iostream>

#include "circq/cli.hpp"

int main(int argc, char** argv) { return circq::cli::main_entry(argc, argv, std::cout, std::cerr); }
