#include <iostream>

#include "psiorder/cli.hpp"

int main(int argc, char** argv) { return psiorder::run_cli(argc, argv, std::cout, std::cerr); }
