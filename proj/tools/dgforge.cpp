#include <iostream>

#include "dgforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dgforge::run_cli(args, std::cout, std::cerr);
}
