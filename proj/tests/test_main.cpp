#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "vcgap/parallel.hpp"

int main(int argc, char** argv) {
  vcgap::configure_workers_from_env();
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
