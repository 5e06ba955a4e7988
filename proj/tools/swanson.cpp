#include "swanson/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return swanson::cli::run(argc, argv, std::cout, std::cerr); }
