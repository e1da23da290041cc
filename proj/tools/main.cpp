#include <iostream>

#include "copmin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return copmin::run(args, std::cout, std::cerr);
}
