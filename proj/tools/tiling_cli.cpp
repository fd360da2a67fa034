#include <iostream>
#include <string>
#include <vector>

#include "tiling/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tiling::cli::run(args, std::cout, std::cerr);
}
