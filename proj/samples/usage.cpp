// Minimal tour: kernel of alpha_eps, its decay certificate, and a cosh factorization.

#include <cstdio>
#include <string>

#include "afact/afact.hpp"

int main() {
  using namespace afact;
  auto g = GroupSpec::real_line();

  auto K = kernel_of_symbol(EntireSymbol::alpha_symbol(0.1), g);
  auto cert = decay_certificate_kernel(K, {1, 2}, 8);
  std::printf("kappa(0) = %.15g, certificate %s\n", K.signal[g.zero_index()].real(), to_string(cert.verdict()));

  auto v = vectors::lorentzian(g);
  auto f = factorize(v, 0.25);
  std::printf("lorentzian at eps 0.25: error %.3g with %d terms\n", f.error, f.terms);

  try {
    factorize(v, 2.0);
  } catch (const Error& e) {
    std::printf("eps 2: %s\n", std::string(to_string(e.code())).c_str());
  }
  return 0;
}
