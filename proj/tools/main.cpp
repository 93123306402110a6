#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const char *mode = std::getenv("LOGIC_WB_OUTPUT");
  auto r = provlab::cli::run(args, mode ? mode : "");
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
