#include <iostream>

#include "mcct/cli_app.hpp"

int main(int argc, char** argv) {
  return mcct::run_cli(argc, argv, std::cout, std::cerr);
}
