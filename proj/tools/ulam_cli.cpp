#include <iostream>

#include "ulam/cli.hpp"

int main(int argc, char** argv) {
  return ulam::run_cli(argc, argv, std::cout, std::cerr);
}
