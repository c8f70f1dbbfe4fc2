#include <iostream>

#include "kirimech/cli.hpp"

int main(int argc, char** argv) { return kirimech::cli::run(argc, argv, std::cout, std::cerr); }
