#include <iostream>

#include "coe_cli/app.hpp"

int main(int argc, char** argv) { return coe::cli::run(argc, argv, std::cout, std::cerr); }
