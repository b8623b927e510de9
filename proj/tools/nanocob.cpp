#include "nanocob/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nanocob::run_cli(argc, argv, std::cout, std::cerr); }
