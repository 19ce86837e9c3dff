#include <iostream>
#include <string>
#include <vector>

#include "sympwidth/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sympwidth::run(args, std::cout, std::cerr);
}
