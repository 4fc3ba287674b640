#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "levymart/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return levy::cli::run(args, std::cout, std::cerr, isatty(STDERR_FILENO) != 0);
}
