#include <iostream>

#include "latcount/cli/commands.hpp"

int main(int argc, char** argv) {
  return latcount::cli::cli_main(argc, argv, std::cout, std::cerr);
}
