#include <iostream>
#include <string>
#include <vector>

#include "orn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orn::runCli(args, std::cout, std::cerr);
}
