#include <iostream>

#include "cfh/cli.hpp"

int main(int argc, char** argv) {
  return cfh::run_cli(argc, argv, std::cout, std::cerr);
}
