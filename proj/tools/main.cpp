#include <iostream>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto outcome = constellation::cli::run_command(args);
  if (outcome.exit_code == 2) {
    std::cerr << outcome.report;
  } else if (outcome.emit_json && outcome.payload) {
    std::cout << outcome.payload_text();
  } else {
    std::cout << outcome.report;
  }
  return outcome.exit_code;
}
