#include <iostream>
#include <string>
#include <vector>

#include "gaussbm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gaussbm::cli::run(args, std::cout, std::cerr);
}
