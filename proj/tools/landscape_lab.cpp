#include <iostream>

#include "landscape/cli.hpp"

int main(int argc, char** argv) { return landscape::run(argc, argv, std::cout, std::cerr); }
