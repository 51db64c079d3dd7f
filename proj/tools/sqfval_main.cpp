#include <iostream>
#include <string>
#include <vector>

#include "sqfval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const sqfval::CliResult result = sqfval::run_invocation(args);
  if (!result.output.empty()) {
    (result.exit_code >= 2 ? std::cerr : std::cout) << result.output;
  }
  return result.exit_code;
}
