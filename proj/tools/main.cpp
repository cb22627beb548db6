#include <vector>

#include "fogsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fogsim::run_cli(args);
}
