#include <iostream>

#include "tlsf/cli.hpp"

int main(int argc, char** argv) { return tlsf::cli_main(argc, argv, std::cout, std::cerr, std::cin); }
