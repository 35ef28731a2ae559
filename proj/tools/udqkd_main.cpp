#include <iostream>
#include <string>
#include <vector>

#include "udqkd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return udqkd::cli::run(args, std::cout, std::cerr);
}
