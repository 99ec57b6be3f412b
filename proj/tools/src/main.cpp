#include <iostream>

#include "urs_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return urs::cli::run(args, std::cout, std::cerr);
}
