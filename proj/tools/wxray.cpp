#include <iostream>

#include "wxray/cli.hpp"

int main(int argc, char** argv) { return wxray::run_cli(argc, argv, std::cout, std::cerr); }
