#include "coxlab/picard.hpp"

#include <doctest.h>

#include <set>

using namespace coxlab;

namespace {

// Wider search box than the library uses, so a too-narrow box would show up as a miss.
int count_wide(int r, int target_k, int target_sq) {
  const DivisorClass k = DivisorClass::canonical(r);
  int count = 0;
  ClassVector v = ClassVector::Zero(r + 1);
  auto rec = [&](auto&& self, int idx) -> void {
    if (idx > r) {
      DivisorClass d(v);
      if (-intersect(k, d) == target_k && intersect(d, d) == target_sq) ++count;
      return;
    }
    const int lo = idx == 0 ? -2 : -3;
    const int hi = idx == 0 ? 5 : 2;
    for (int c = lo; c <= hi; ++c) {
      v(idx) = c;
      self(self, idx + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace

TEST_CASE("intersection form") {
  const int r = 6;
  CHECK(intersect(DivisorClass::line(r), DivisorClass::line(r)) == 1);
  CHECK(intersect(DivisorClass::exceptional(r, 1), DivisorClass::exceptional(r, 1)) == -1);
  CHECK(intersect(DivisorClass::exceptional(r, 1), DivisorClass::exceptional(r, 2)) == 0);
  CHECK(intersect(DivisorClass::canonical(r), DivisorClass::canonical(r)) == 3);
  CHECK(coarse_degree(-DivisorClass::canonical(r)) == 3);
  CHECK_THROWS_AS(intersect(DivisorClass::line(4), DivisorClass::line(5)), DimensionError);
  CHECK_THROWS_AS(enumerate_exceptional(3), std::out_of_range);
  CHECK_THROWS_AS(enumerate_conics(7), std::out_of_range);
}

TEST_CASE("class parsing and printing") {
  const DivisorClass d = DivisorClass::parse("2l-e1-e2-e3-e4", 5);
  CHECK(d.vector_str() == "2,-1,-1,-1,-1,0");
  CHECK(DivisorClass::parse(d.vector_str(), 5) == d);
  CHECK(DivisorClass::parse(d.str(), 5) == d);
  CHECK(DivisorClass::parse("-K", 4) == -DivisorClass::canonical(4));
  CHECK(DivisorClass::parse("3l - 2e1 + e3", 4).str() == "3l-2e1+e3");
  CHECK(DivisorClass::zero(4).str() == "0");
  CHECK_THROWS_AS(DivisorClass::parse("1,2,3", 4), DimensionError);
  CHECK_THROWS(DivisorClass::parse("2x", 4));
  CHECK_THROWS_AS(DivisorClass::parse("l-e7", 6), DimensionError);
}

TEST_CASE("exceptional curves and conics") {
  const int expected_curves[] = {10, 16, 27};
  const int expected_conics[] = {5, 10, 27};
  for (int r = 4; r <= 6; ++r) {
    const CurveSet curves = enumerate_exceptional(r);
    CHECK(curves.size() == static_cast<std::size_t>(expected_curves[r - 4]));
    CHECK(count_wide(r, 1, -1) == expected_curves[r - 4]);
    CHECK(enumerate_conics(r).size() == static_cast<std::size_t>(expected_conics[r - 4]));
    CHECK(count_wide(r, 2, 0) == expected_conics[r - 4]);
    std::set<DivisorClass> seen;
    for (const Curve& c : curves) {
      CHECK(intersect(DivisorClass::canonical(r), c.cls) == -1);
      CHECK(intersect(c.cls, c.cls) == -1);
      CHECK(coarse_degree(c.cls) == 1);
      seen.insert(c.cls);
    }
    CHECK(seen.size() == curves.size());
    for (const DivisorClass& c : enumerate_conics(r)) CHECK(coarse_degree(c) == 2);
  }
  const CurveSet c5 = enumerate_exceptional(5);
  CHECK(c5[0].label == "e1");
  CHECK(c5[5].label == "f12");
  CHECK(c5[15].label == "g");
  CHECK(c5[15].cls == DivisorClass({2, -1, -1, -1, -1, -1}));
  const CurveSet c6 = enumerate_exceptional(6);
  CHECK(c6[*c6.find("g3")].cls == DivisorClass({2, -1, -1, 0, -1, -1, -1}));
  CHECK(c6[*c6.find("f46")].cls == DivisorClass({1, 0, 0, 0, -1, 0, -1}));
}

TEST_CASE("Weyl group orders and invariants") {
  const std::size_t orders[] = {120, 1920, 51840};
  for (int r = 4; r <= 6; ++r) {
    const WeylGroup& w = weyl_group(r);
    CHECK(w.order() == orders[r - 4]);
    CHECK(w.generators().size() == static_cast<std::size_t>(r));
    const DivisorClass k = DivisorClass::canonical(r);
    std::vector<DivisorClass> basis{DivisorClass::line(r)};
    for (int i = 1; i <= r; ++i) basis.push_back(DivisorClass::exceptional(r, i));
    bool form_ok = true;
    bool k_fixed = true;
    for (const WeylElement& g : w.elements()) {
      if (act(g, k) != k) k_fixed = false;
      for (const auto& a : basis) {
        for (const auto& b : basis) {
          if (intersect(act(g, a), act(g, b)) != intersect(a, b)) form_ok = false;
        }
      }
    }
    CHECK(form_ok);
    CHECK(k_fixed);

    std::vector<DivisorClass> curve_classes;
    for (const Curve& c : w.curves()) curve_classes.push_back(c.cls);
    CHECK(orbits(w.generators(), curve_classes).size() == 1);
    CHECK(orbits(w.generators(), enumerate_conics(r)).size() == 1);

    const WeylElement& id = w[0];
    for (std::size_t i = 0; i < id.curve_perm.size(); ++i) CHECK(id.curve_perm[i] == i);
  }
}

TEST_CASE("Cremona element") {
  const int r = 6;
  const CurveSet& curves = exceptional_curves(r);
  const WeylElement sigma = make_weyl_element(curves, cremona_matrix(r));
  CHECK(act(sigma, DivisorClass::line(r)) == DivisorClass({2, -1, -1, -1, 0, 0, 0}));
  CHECK(act(sigma, DivisorClass::exceptional(r, 1)) == DivisorClass({1, 0, -1, -1, 0, 0, 0}));
  CHECK(compose(sigma, sigma).matrix == LatticeMatrix::Identity(7, 7));
}

TEST_CASE("composition and inverses agree with curve permutations") {
  const WeylGroup& w = weyl_group(5);
  for (std::size_t i = 0; i < w.order(); i += 37) {
    for (std::size_t j = 1; j < w.order(); j += 211) {
      const WeylElement gh = compose(w[i], w[j]);
      const WeylElement direct = make_weyl_element(w.curves(), gh.matrix);
      CHECK(gh.curve_perm == direct.curve_perm);
      CHECK(w.index_of(gh.matrix).has_value());
    }
    const WeylElement inv = w[w.inverse_index(i)];
    CHECK(compose(inv, w[i]).matrix == LatticeMatrix::Identity(6, 6));
  }
}

TEST_CASE("generators fix the curve and conic sets") {
  for (int r = 4; r <= 6; ++r) {
    const WeylGroup& w = weyl_group(r);
    const auto conics = enumerate_conics(r);
    const std::set<DivisorClass> conic_set(conics.begin(), conics.end());
    for (const WeylElement& g : w.generators()) {
      for (const DivisorClass& c : conics) CHECK(conic_set.count(act(g, c)) == 1);
      for (const Curve& c : w.curves()) CHECK(w.curves().find(act(g, c.cls)).has_value());
    }
  }
}
