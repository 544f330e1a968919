#include <string>
#include <vector>

#include "schmidt/cli_app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return schmidt::run_cli(std::move(args));
}
