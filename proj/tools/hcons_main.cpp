#include <iostream>
#include <string>
#include <vector>

#include "hcons/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hcons::cli::run(args, std::cout, std::cerr);
}
