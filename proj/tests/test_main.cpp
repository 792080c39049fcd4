#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <string>

// Directory holding the test binary; the CLI binary is its sibling, which
// the end-to-end tests exec directly.
std::string g_test_bin_dir;

int main(int argc, char** argv) {
  std::string self = argv[0];
  std::size_t slash = self.find_last_of('/');
  g_test_bin_dir = slash == std::string::npos ? "." : self.substr(0, slash);
  return doctest::Context(argc, argv).run();
}
