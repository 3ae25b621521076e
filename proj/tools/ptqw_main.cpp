#include <iostream>

#include "ptqw/cli/run.hpp"

int main(int argc, char** argv) { return ptqw::cli::main_entry(argc, argv, std::cout, std::cerr); }
