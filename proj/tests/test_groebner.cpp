#include "coxlab/geometry.hpp"
#include "coxlab/groebner.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace coxlab;

namespace {

using Q = Rational;

const char* const kOrder4 = "revlex:e1>e2>e3>e4>f12>f13>f23>f14>f24>f34";
const char* const kOrder5 =
    "weights:[e4=13,f13=11,e2=10,f23=9,f15=8,g=8,e1=7,f25=7,e3=6,e5=6,f12=6,f14=6,f24=6,f34=6,f35=6,f45=1];"
    "tiebreak:revlex:e4>f13>e2>f23>f15>g>e1>f25>e3>e5>f12>f14>f24>f34>f35>f45";

std::vector<PlanePoint<Q>> standard_points() {
  return {{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}, {Q(1), Q(1), Q(1)}};
}

std::vector<PlanePoint<Q>> random_general(int r, std::mt19937_64& rng) {
  while (true) {
    std::vector<PlanePoint<Q>> pts;
    for (int i = 0; i < r; ++i) {
      pts.push_back({Q(static_cast<long>(rng() % 41) - 20), Q(static_cast<long>(rng() % 41) - 20), Q(1)});
    }
    if (check_general_position(pts).ok) return pts;
  }
}

template <class S>
Polynomial<S> s_polynomial(const Polynomial<S>& f, const Polynomial<S>& g, const MonomialOrder& ord) {
  const Term<S> a = f.leading_term(ord);
  const Term<S> b = g.leading_term(ord);
  const Monomial l = lcm(a.mono, b.mono);
  return (l / a.mono) * ((S(1) / a.coeff) * f) - (l / b.mono) * ((S(1) / b.coeff) * g);
}

// Buchberger's criterion checked pair by pair, without any pair elimination.
template <class S>
bool is_groebner_basis(const std::vector<Polynomial<S>>& g, const MonomialOrder& ord) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!normal_form(s_polynomial(g[i], g[j], ord), g, ord).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("normal forms") {
  const CoxRing& ring = cox_ring(4);
  const MonomialOrder ord = MonomialOrder::parse(kOrder4, ring);
  const auto f = parse_polynomial<Q>(ring, "e1*f12 - 2*e2*f12");
  const auto g = parse_polynomial<Q>(ring, "e1 + e3");
  const auto nf = normal_form(f, {g}, ord);
  CHECK(nf == parse_polynomial<Q>(ring, "-e3*f12 - 2*e2*f12"));
  CHECK(normal_form(Polynomial<Q>(), {g}, ord).is_zero());
  CHECK(normal_form(g * f, {g}, ord).is_zero());
  CHECK_THROWS(normal_form(f, {Polynomial<Q>()}, ord));
}

TEST_CASE("monomial generators are their own basis") {
  const CoxRing& ring = cox_ring(4);
  const MonomialOrder ord = MonomialOrder::parse(kOrder4, ring);
  std::vector<Polynomial<Q>> gens;
  for (const char* m : {"e1*f12", "e1^2*f12*e2", "f23*f14", "e1*f12"}) {
    gens.push_back(Polynomial<Q>::monomial(ring.parse_monomial(m)));
  }
  const auto gb = buchberger(gens, ord);
  CHECK(gb.basis.size() == 2);
  CHECK(gb.initial() == parse_monomial_ideal(ring, "e1*f12\nf23*f14"));
}

TEST_CASE("r=4 initial ideal") {
  const CoxRing& ring = cox_ring(4);
  const MonomialOrder ord = MonomialOrder::parse(kOrder4, ring);
  const auto gens = build_qr(standard_points());
  BuchbergerStats stats;
  const auto gb = buchberger(gens, ord, &stats);
  CHECK(gb.initial() == parse_monomial_ideal(ring, "f23*f14\ne1*f14\ne1*f13\ne2*f12\ne1*f12"));
  CHECK(gb.max_degree() == 2);
  CHECK(is_groebner_basis(gb.basis, ord));
  CHECK(stats.pairs_considered > 0);
  for (const auto& g : gb.basis) CHECK(g.leading_term(ord).coeff == Q(1));

  // Every input reduces to zero, as does a random combination.
  for (const auto& f : gens) CHECK(normal_form(f, gb.basis, ord).is_zero());
  std::mt19937_64 rng(17);
  Polynomial<Q> combo;
  for (const auto& f : gens) {
    const auto& mons = ring.monomials_of_degree(1);
    combo = combo + Q(static_cast<long>(rng() % 7) - 3) * (mons[rng() % mons.size()] * f);
  }
  CHECK(normal_form(combo, gb.basis, ord).is_zero());

  // The reduced basis does not depend on generator order.
  std::vector<Polynomial<Q>> shuffled = gens;
  for (int trial = 0; trial < 4; ++trial) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(buchberger(shuffled, ord).basis == gb.basis);
  }
}

TEST_CASE("r=4 over prime fields") {
  const CoxRing& ring = cox_ring(4);
  const MonomialOrder ord = MonomialOrder::parse(kOrder4, ring);
  std::vector<PlanePoint<Fp32003>> pts;
  for (const auto& p : standard_points()) pts.push_back({Fp32003(p[0]), Fp32003(p[1]), Fp32003(p[2])});
  const auto gb = buchberger(build_qr(pts), ord);
  CHECK(gb.initial() == parse_monomial_ideal(ring, "f23*f14\ne1*f14\ne1*f13\ne2*f12\ne1*f12"));
}

TEST_CASE("r=5 initial ideal at random points") {
  const CoxRing& ring = cox_ring(5);
  const MonomialOrder ord = MonomialOrder::parse(kOrder5, ring);
  const MonomialIdeal expected = parse_monomial_ideal(ring,
                                                      "e4*f14\ne3*f13\ne4*f24\ne3*f23\ne4*f34\ne2*f23\n"
                                                      "e2*f24\ne1*f14\ne2*f25\ne1*f15\nf24*f13\nf14*f23\n"
                                                      "e4*g\nf13*f25\ne3*g\nf24*f15\ne2*g\nf15*f34\n"
                                                      "e1*g\nf25*f34");
  REQUIRE(expected.size() == 20);
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 2; ++trial) {
    const auto gb = buchberger(build_qr(random_general(5, rng)), ord);
    CHECK(gb.initial() == expected);
    CHECK(gb.weight_generic());
    CHECK(is_groebner_basis(gb.basis, ord));
  }
}

TEST_CASE("graded pieces match Hilbert values of the initial ideal") {
  std::mt19937_64 rng(7);
  const CoxRing& ring = cox_ring(5);
  const MonomialOrder ord = MonomialOrder::parse(kOrder5, ring);
  const auto pts = random_general(5, rng);
  const auto gens = build_qr(pts);
  const auto gb = buchberger(gens, ord);
  const auto real = realize(pts);
  const auto mons = ring.monomials_of_degree(2);
  for (int trial = 0; trial < 25; ++trial) {
    const Monomial u = mons[rng() % mons.size()] * ring.monomials_of_degree(1)[rng() % 16];
    const DivisorClass d = ring.pic_degree(u);
    const auto piece = graded_piece(ring, gens, d);
    CHECK(piece.codimension() == hilbert_at(ring, gb.initial(), d));
    CHECK(piece.codimension() == section_rank(real, d));
  }
  const DivisorClass conic = DivisorClass::parse("l-e1", 5);
  const auto piece = graded_piece(ring, gens, conic);
  CHECK(piece.dimension() == 2);
  for (const auto& f : relations_in_degree(real, conic)) CHECK(piece.contains(f));
  CHECK_FALSE(piece.contains(Polynomial<Q>::monomial(ring.parse_monomial("e2*f12"))));
  CHECK_THROWS(piece.coordinates(Polynomial<Q>::monomial(ring.parse_monomial("e1"))));
}
