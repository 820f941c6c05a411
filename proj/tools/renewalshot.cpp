#include <iostream>

#include "rsn/cli.hpp"

int main(int argc, char** argv) { return rsn::cli::run(argc, argv, std::cout, std::cerr); }
