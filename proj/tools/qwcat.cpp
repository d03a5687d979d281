#include <vector>

#include "qw/cli.hpp"

int main(int argc, char** argv) {
  return qw::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
