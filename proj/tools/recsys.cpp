#include "nftrec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nftrec::cli::run(argc, argv, std::cout, std::cerr); }
