#include <iostream>
#include <string>
#include <vector>

#include "blochkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blochkit::dispatch(args, std::cout, std::cerr);
}
