#include <iostream>

#include "oar/cli.hpp"

int main(int argc, char** argv) { return oar::cli_main(argc, argv, std::cout, std::cerr); }
