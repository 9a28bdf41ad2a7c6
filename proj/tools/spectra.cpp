#include <iostream>

#include "spectra_cli.hpp"

int main(int argc, char** argv) { return spectra::run(argc, argv, std::cout, std::cerr); }
