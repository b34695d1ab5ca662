#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return wordsim::cli::run(argc, argv, std::cout, std::cerr); }
