#include <iostream>
#include <string>
#include <vector>

#include "lgtool/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lgtool::run(args, std::cout, std::cerr);
}
