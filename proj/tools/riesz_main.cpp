#include "harness/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return riesz::harness::runCli(argc, argv, std::cout, std::cerr); }
