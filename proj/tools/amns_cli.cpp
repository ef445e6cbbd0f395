#include <iostream>

#include "amns/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return amns::cli::run_cli(args, std::cout, std::cerr);
}
