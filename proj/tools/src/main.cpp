#include <iostream>

#include "triplelab/cli.hpp"

int main(int argc, char** argv) { return triplelab::cli::main_entry(argc, argv, std::cout, std::cerr); }
