#include "coxlab/symmetry.hpp"
#include "coxlab/tables.hpp"

#include <doctest.h>

#include <random>

using namespace coxlab;

namespace {

using Q = Rational;

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

std::vector<std::int64_t> random_weights(int n, std::mt19937_64& rng) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = 1 + static_cast<std::int64_t>(rng() % 200);
  return w;
}

WeylElement transposition(int r, int i, int j) {
  return make_weyl_element(exceptional_curves(r), transposition_matrix(r, i, j));
}

}  // namespace

TEST_CASE("Hilbert series invariance") {
  const CoxRing& r4 = cox_ring(4);
  const auto& tables = reference_tables();
  CHECK(hs_invariant(r4, tables.initial_ideal(4), weyl_group(4).generators()));
  CHECK(hs_invariant(r4, MonomialIdeal(), weyl_group(4).generators()));
  const CoxRing& r5 = cox_ring(5);
  const MonomialIdeal edge({r5.parse_monomial("e1*f12")});
  CHECK_FALSE(hs_invariant(r5, edge, weyl_group(5).generators()));
  CHECK(hs_invariant(r5, edge, {identity_element(exceptional_curves(5))}));
  // Invariance is constant on orbits.
  std::mt19937_64 rng(4);
  const MonomialIdeal m5 = tables.initial_ideal(5);
  for (int trial = 0; trial < 3; ++trial) {
    const WeylElement& g = weyl_group(5)[rng() % weyl_group(5).order()];
    CHECK(hs_invariant(r5, act(r5, g, m5), weyl_group(5).generators()));
    CHECK_FALSE(hs_invariant(r5, act(r5, g, edge), weyl_group(5).generators()));
  }
}

TEST_CASE("weight action") {
  const WeylGroup& w5 = weyl_group(5);
  std::mt19937_64 rng(12);
  const auto w = random_weights(16, rng);
  CHECK(weight_action(w5[0], w) == w);
  for (int trial = 0; trial < 20; ++trial) {
    const WeylElement& g = w5[rng() % w5.order()];
    const WeylElement& h = w5[rng() % w5.order()];
    CHECK(weight_action(inverse(g), weight_action(g, w)) == w);
    CHECK(weight_action(compose(g, h), w) == weight_action(h, weight_action(g, w)));
  }
  CHECK_THROWS(weight_action(w5[0], std::vector<std::int64_t>(3, 1)));

  // The moved weights pick g^{-1}(M_5) as the heaviest pair in every conic degree.
  const CoxRing& ring = cox_ring(5);
  const auto& tables = reference_tables();
  const MonomialOrder pesi = tables.order(5);
  const MonomialIdeal m5 = tables.initial_ideal(5);
  for (int trial = 0; trial < 5; ++trial) {
    const WeylElement& g = w5[rng() % w5.order()];
    const MonomialOrder moved = MonomialOrder::weighted(weight_action(g, pesi.weights()), pesi.sequence());
    const MonomialIdeal expected = act(ring, inverse(g), m5);
    std::vector<Monomial> heaviest;
    for (const DivisorClass& c : enumerate_conics(5)) {
      auto mons = ring.enumerate_monomials(c);
      std::sort(mons.begin(), mons.end(), [&](const Monomial& a, const Monomial& b) { return moved.weight(a) > moved.weight(b); });
      REQUIRE(moved.weight(mons[1]) > moved.weight(mons[2]));
      heaviest.push_back(mons[0]);
      heaviest.push_back(mons[1]);
    }
    CHECK(MonomialIdeal(heaviest) == expected);
  }
}

TEST_CASE("monomial action witnesses") {
  std::mt19937_64 rng(31);
  const CoxRing& ring = cox_ring(5);
  const auto gens = build_qr(random_general(5, rng));
  const auto pieces = pieces_of_generators(ring, gens);
  const WeylElement id = identity_element(exceptional_curves(5));
  const auto self = monomial_action_witness(ring, pieces, id, gens[0]);
  REQUIRE(self.found());
  CHECK(self.witness->support() == gens[0].support());
  for (const auto& f : gens) {
    for (const WeylElement& g : weyl_group(5).generators()) {
      const auto report = monomial_action_witness(ring, pieces, g, f);
      REQUIRE(report.found());
      CHECK(report.subspace_dimension == 1);
      std::vector<Monomial> support = report.support;
      std::sort(support.begin(), support.end(), std::greater<>());
      CHECK(report.witness->support() == support);
    }
  }
  CHECK_THROWS(monomial_action_witness(ring, pieces, id, Polynomial<Q>::monomial(ring.parse_monomial("e1*f12"))));
}

TEST_CASE("Eckart configurations break the monomial action") {
  const std::vector<PlanePoint<Q>> pts{{Q(1), Q(0), Q(1)}, {Q(2), Q(0), Q(1)}, {Q(0), Q(1), Q(1)},
                                       {Q(0), Q(3), Q(1)}, {Q(1), Q(1), Q(1)}, {Q(-2), Q(-2), Q(1)}};
  const auto real = realize(pts);
  const CoxRing& ring = cox_ring(6);
  const auto pieces = pieces_of_realization(real);
  const std::vector<Monomial> triple{ring.parse_monomial("f12*e1*e2"), ring.parse_monomial("f34*e3*e4"),
                                     ring.parse_monomial("f56*e5*e6")};
  const auto f = element_with_support(pieces(DivisorClass::line(6)), triple);
  REQUIRE(f.has_value());
  const auto report = monomial_action_witness(ring, pieces, transposition(6, 2, 4), *f);
  CHECK_FALSE(report.found());
  CHECK(report.support_rank == 3);
  CHECK(report.support[0] == ring.parse_monomial("f14*e1*e4"));
}

TEST_CASE("twisted initial ideals for r=4") {
  const CoxRing& ring = cox_ring(4);
  const MonomialOrder ord = reference_tables().order(4);
  const auto gens = build_qr(standard_points());
  const WeylGroup& w4 = weyl_group(4);
  std::vector<WeylElement> elements = w4.generators();
  std::mt19937_64 rng(77);
  for (int k = 0; k < 10; ++k) elements.push_back(w4[rng() % w4.order()]);
  for (const WeylElement& g : elements) {
    CHECK(acts_monomially_on_basis(ring, gens, ord, g));
    CHECK(acts_monomially_on_basis(ring, gens, ord, inverse(g)));
    const auto report = twisted_initial_check(ring, gens, ord, g);
    CHECK(report.equal());
  }
  CHECK(twisted_initial_check(ring, gens, ord, w4[0]).image == reference_tables().initial_ideal(4));
}

TEST_CASE("Groebner cone spot checks") {
  std::mt19937_64 rng(5);
  const CoxRing& r4 = cox_ring(4);
  const auto g4 = build_qr(standard_points());
  int generic = 0;
  for (int trial = 0; generic < 5 && trial < 50; ++trial) {
    const auto w = random_weights(10, rng);
    std::vector<ConeReport<Q>> reports;
    for (const WeylElement& g : weyl_group(4).generators()) reports.push_back(groebner_cone_spotcheck(r4, g4, w, g));
    if (!reports.front().generic) continue;
    for (const auto& report : reports) CHECK(report.holds());
    ++generic;
  }
  CHECK(generic == 5);

  const CoxRing& r5 = cox_ring(5);
  const auto g5 = build_qr(random_general(5, rng));
  const auto pesi = reference_tables().order(5).weights();
  const WeylElement& sigma = weyl_group(5).generators().back();
  const auto report = groebner_cone_spotcheck(r5, g5, pesi, sigma);
  CHECK(report.generic);
  CHECK(report.holds());
}
