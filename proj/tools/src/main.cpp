#include "tilekit/cli.hpp"

int main(int argc, char** argv) {
  return tilekit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr, std::cin);
}
