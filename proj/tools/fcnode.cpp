#include <iostream>

#include "fc/cli/cli.hpp"

int main(int argc, char** argv) { return fc::cli::run({argv + 1, argv + argc}, std::cout, std::cerr); }
