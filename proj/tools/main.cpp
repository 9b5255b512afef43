#include "borbit/cli.hpp"

int main(int argc, char** argv) {
  return borbit::cli_main(argc, argv);
}
