#include <iostream>

#include "fluctuaverse/cli.hpp"

int main(int argc, char** argv) { return fluctuaverse::cli::run(argc, argv, std::cout, std::cerr); }
