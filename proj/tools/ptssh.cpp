#include <vector>

#include "ptssh/cli.hpp"

int main(int argc, char** argv) {
  return ptssh::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
