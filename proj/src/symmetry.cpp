#include "coxlab/symmetry.hpp"

namespace coxlab {

bool hs_invariant(const CoxRing& ring, const MonomialIdeal& m, const std::vector<WeylElement>& gens) {
  const KPolynomial k = k_polynomial(ring, m);
  for (const WeylElement& g : gens) {
    if (act(g, k) != k) return false;
  }
  return true;
}

std::vector<std::int64_t> weight_action(const WeylElement& g, const std::vector<std::int64_t>& w) {
  if (w.size() != g.curve_perm.size()) throw std::invalid_argument("weight vector has the wrong length");
  std::vector<std::int64_t> out(w.size());
  for (std::size_t v = 0; v < w.size(); ++v) out[v] = w[static_cast<std::size_t>(g.curve_perm[v])];
  return out;
}

}  // namespace coxlab
