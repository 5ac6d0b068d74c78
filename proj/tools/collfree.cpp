#include <iostream>

#include "collfree/harness/run.hpp"

int main(int argc, char** argv) {
  using namespace collfree::harness;
  const auto parsed = parse_command_line(argc, argv, std::cout, std::cerr);
  if (!parsed.config) return parsed.exit_status;
  return run(*parsed.config, std::cout, std::cerr);
}
