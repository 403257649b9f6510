#include <iostream>

#include "linfty/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return linfty::run_cli(args, std::cout, std::cerr);
}
