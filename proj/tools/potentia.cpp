#include <iostream>

#include "potentia/cli.hpp"

int main(int argc, char** argv) { return potentia::cli::main_entry(argc, argv, std::cout, std::cerr); }
