// Prints the certified minimizer of rho over connected graphs of order n with
// independence number ceil(n/2) - 1, for the orders given on the command line
// (default 5..8).
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "spectra/spectra.hpp"

int main(int argc, char** argv) {
  std::vector<int> ns;
  for (int i = 1; i < argc; ++i) ns.push_back(std::atoi(argv[i]));
  if (ns.empty()) ns = {5, 6, 7, 8};
  for (int n : ns) {
    const int alpha = spectra::minimizer_alpha(n);
    const auto r = spectra::minimizer(n, alpha);
    std::printf("n=%d alpha=%d class=%zu rho=%.12f argmin:", n, alpha, r.class_size, r.min_rho);
    for (const auto& g : r.argmin) std::printf(" %s", spectra::describe_graph(g).c_str());
    std::printf("  expected %s\n", r.expected.c_str());
  }
}
