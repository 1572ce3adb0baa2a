#include "coxlab/monomial_ideal.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace coxlab;

namespace {

MonomialIdeal m4() {
  return parse_monomial_ideal(cox_ring(4), "f23*f14\ne1*f14\ne1*f13\ne2*f12\ne1*f12\n");
}

std::int64_t binom2(int m) { return static_cast<std::int64_t>(m + 2) * (m + 1) / 2; }

// Every Pic degree reachable in coarse degree <= k.
std::set<DivisorClass> degrees_up_to(const CoxRing& ring, int k) {
  std::set<DivisorClass> out;
  for (int j = 0; j <= k; ++j) {
    for (const Monomial& m : ring.monomials_of_degree(j)) out.insert(ring.pic_degree(m));
  }
  return out;
}

// Exhaustive maximum independent set for small variable counts.
int brute_independence(int n, const MonomialIdeal& m) {
  int best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (const Monomial& g : m.generators()) {
      if ((g.support_mask() & ~s) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max(best, std::popcount(s));
  }
  return best;
}

}  // namespace

TEST_CASE("minimal generators and membership") {
  const CoxRing& ring = cox_ring(4);
  const MonomialIdeal m = parse_monomial_ideal(ring, "e1*f12, e1*f12*e3\ne1^2*f12  # redundant\n");
  CHECK(m.size() == 1);
  const MonomialIdeal a = m4();
  CHECK(a.size() == 5);
  CHECK(monomial_membership(a, ring.parse_monomial("e1*f12*e3")));
  CHECK_FALSE(monomial_membership(a, Monomial()));
  for (const Monomial& g : a.generators()) CHECK(a.contains(g));
  CHECK(parse_monomial_ideal(ring, R"(["e1*f12", "f23*f14"])").size() == 2);
  CHECK(format(ring, MonomialIdeal({ring.parse_monomial("f12")})) == "(f12)");
}

TEST_CASE("saturation") {
  const CoxRing& ring = cox_ring(4);
  const MonomialIdeal sat = colon_saturate(m4(), ring.e_variables());
  CHECK(sat == parse_monomial_ideal(ring, "f12\nf13\nf14"));
  const MonomialIdeal free = parse_monomial_ideal(ring, "f12*f34\nf13*f24");
  CHECK(colon_saturate(free, ring.e_variables()) == free);
  CHECK(colon(m4(), ring.parse_monomial("e1")) == parse_monomial_ideal(ring, "f12\nf13\nf14\ne2*f12"));
}

TEST_CASE("Hilbert values of the r=4 ideal") {
  const CoxRing& ring = cox_ring(4);
  const MonomialIdeal m = m4();
  CHECK(hilbert_at(ring, m, DivisorClass::parse("l-e1", 4)) == 2);
  const MonomialIdeal zero;
  const DivisorClass d = DivisorClass::parse("2l-e1-e2", 4);
  CHECK(hilbert_at(ring, zero, d) == static_cast<std::int64_t>(ring.enumerate_monomials(d).size()));
  const MonomialIdeal sat = colon_saturate(m, ring.e_variables());
  CHECK(hilbert_at(ring, sat, DivisorClass::parse("2l+5e1+5e2+5e3+5e4", 4)) == 6);
  for (int k = 0; k <= 6; ++k) {
    const StableCount sc = stable_count(ring, m, k);
    CHECK(sc.stable);
    CHECK(sc.value == binom2(k));
  }
}

TEST_CASE("K-polynomial of the r=4 ideal") {
  const CoxRing& ring = cox_ring(4);
  const KPolynomial k = k_polynomial(ring, m4());
  CHECK(k.size() == 12);
  KPolynomial expected{{DivisorClass::zero(4), 1}};
  const DivisorClass minus_k = -DivisorClass::canonical(4);
  expected[minus_k] = -1;
  for (const DivisorClass& c : enumerate_conics(4)) {
    expected[c] -= 1;
    expected[minus_k - c] += 1;
  }
  CHECK(k == expected);
  for (const WeylElement& g : weyl_group(4).generators()) CHECK(act(g, k) == k);
  CHECK(k_polynomial(ring, MonomialIdeal()) == KPolynomial{{DivisorClass::zero(4), 1}});
  CHECK(format_kpolynomial(KPolynomial{{DivisorClass::zero(4), 1}}) == "1");
}

TEST_CASE("K-polynomials reproduce Hilbert values") {
  std::mt19937_64 rng(3);
  for (int r = 4; r <= 5; ++r) {
    const CoxRing& ring = cox_ring(r);
    const auto deg2 = ring.monomials_of_degree(2);
    const auto deg3 = ring.monomials_of_degree(3);
    const auto degrees = degrees_up_to(ring, r == 4 ? 5 : 4);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Monomial> gens;
      const int count = 3 + static_cast<int>(rng() % 8);
      for (int i = 0; i < count; ++i) {
        gens.push_back(i % 3 == 2 ? deg3[rng() % deg3.size()] : deg2[rng() % deg2.size()]);
      }
      const MonomialIdeal m(gens);
      const KPolynomial k = k_polynomial(ring, m);
      for (const DivisorClass& d : degrees) CHECK(hilbert_from_k_polynomial(ring, k, d) == hilbert_at(ring, m, d));
    }
  }
  const CoxRing& r4 = cox_ring(4);
  const KPolynomial k = k_polynomial(r4, m4());
  for (const DivisorClass& d : degrees_up_to(r4, 6)) CHECK(hilbert_from_k_polynomial(r4, k, d) == hilbert_at(r4, m4(), d));
}

TEST_CASE("codimension") {
  const CoxRing& ring = cox_ring(4);
  CHECK(codimension(ring, parse_monomial_ideal(ring, "f12*f34")) == 1);
  CHECK(codimension(ring, MonomialIdeal()) == 0);
  CHECK_THROWS(codimension(ring, parse_monomial_ideal(ring, "e1^2")));
  std::mt19937_64 rng(8);
  const auto deg2 = ring.monomials_of_degree(2);
  const auto deg3 = ring.monomials_of_degree(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Monomial> gens;
    const int count = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < count; ++i) {
      const Monomial& g = i % 4 == 3 ? deg3[rng() % deg3.size()] : deg2[rng() % deg2.size()];
      if (g.is_squarefree()) gens.push_back(g);
    }
    const MonomialIdeal m(gens);
    CHECK(ring.num_variables() - codimension(ring, m) == brute_independence(ring.num_variables(), m));
  }
}
