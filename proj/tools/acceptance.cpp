// Acceptance run: one PASS/FAIL line per criterion, exact comparisons and pinned time
// budgets. Exit status is 0 iff the failing criteria are exactly those named with
// --expect-fail.

#include "coxlab/lab.hpp"
#include "coxlab/symmetry.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace {

using namespace coxlab;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

std::int64_t binom2(int m) { return static_cast<std::int64_t>(m + 2) * (m + 1) / 2; }

bool counts_ok(const CoxRing& ring, const MonomialIdeal& m, int max_m) {
  for (int k = 0; k <= max_m; ++k) {
    const StableCount sc = stable_count(ring, m, k);
    if (!sc.stable || sc.value != binom2(k)) return false;
  }
  return true;
}

// Exceptional classes by a wider coefficient box than the library uses.
std::set<DivisorClass> exceptional_by_box(int r) {
  std::set<DivisorClass> out;
  ClassVector v(r + 1);
  std::function<void(int)> rec = [&](int k) {
    if (k > r) {
      const DivisorClass d(v);
      if (intersect(d, d) == -1 && intersect(d, DivisorClass::canonical(r)) == -1) out.insert(d);
      return;
    }
    for (int x = (k == 0 ? 0 : -3); x <= 3; ++x) {
      v(k) = x;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

std::set<DivisorClass> conics_by_box(int r) {
  std::set<DivisorClass> out;
  ClassVector v(r + 1);
  std::function<void(int)> rec = [&](int k) {
    if (k > r) {
      const DivisorClass d(v);
      if (intersect(d, d) == 0 && coarse_degree(d) == 2) out.insert(d);
      return;
    }
    for (int x = (k == 0 ? 0 : -3); x <= 3; ++x) {
      v(k) = x;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

void criterion_classification(Outcome& o) {
  const int curves[] = {10, 16, 27};
  const int conics[] = {5, 10, 27};
  for (int r = 4; r <= 6; ++r) {
    const CurveSet c = enumerate_exceptional(r);
    const auto q = enumerate_conics(r);
    std::set<DivisorClass> cs;
    for (const Curve& x : c) cs.insert(x.cls);
    o.detail << " r=" << r << ": " << c.size() << "/" << q.size();
    o.require(static_cast<int>(c.size()) == curves[r - 4], "curve count");
    o.require(static_cast<int>(q.size()) == conics[r - 4], "conic count");
    o.require(cs == exceptional_by_box(r), "curves differ from the box search");
    o.require(std::set<DivisorClass>(q.begin(), q.end()) == conics_by_box(r), "conics differ from the box search");
  }
}

void criterion_weyl(Outcome& o) {
  const std::size_t sizes[] = {120, 1920, 51840};
  for (int r = 4; r <= 6; ++r) {
    const WeylGroup& w = weyl_group(r);
    o.detail << " |W_" << r << "|=" << w.order();
    o.require(w.order() == sizes[r - 4], "group order");
    LatticeMatrix form = LatticeMatrix::Identity(r + 1, r + 1);
    for (int i = 1; i <= r; ++i) form(i, i) = -1;
    const DivisorClass k = DivisorClass::canonical(r);
    bool preserved = true;
    for (const WeylElement& g : w.elements()) {
      preserved = preserved && LatticeMatrix(g.matrix.transpose() * form * g.matrix) == form && act(g, k) == k;
    }
    o.require(preserved, "intersection form or K not preserved");
    std::vector<DivisorClass> curves;
    for (const Curve& c : w.curves()) curves.push_back(c.cls);
    o.require(orbits(w.generators(), curves).size() == 1, "one orbit on curves");
    o.require(orbits(w.generators(), enumerate_conics(r)).size() == 1, "one orbit on conics");
  }
}

void criterion_construction(Outcome& o) {
  const std::size_t counts[] = {5, 20, 81};
  for (int r = 4; r <= 6; ++r) {
    const auto pts = sample_points<Rational>(r, 100 + static_cast<std::uint64_t>(r), {});
    const auto real = realize(pts);
    const auto gens = build_qr(real);
    o.detail << " r=" << r << ": " << gens.size();
    o.require(gens.size() == counts[r - 4], "generator count");
    bool three = true, vanish = true;
    for (const auto& f : gens) {
      three = three && f.size() == 3;
      const auto form = evaluate_polynomial(real, f).coeffs;
      for (Eigen::Index i = 0; i < form.size(); ++i) vanish = vanish && form(i).is_zero();
    }
    o.require(three, "a generator without exactly three terms");
    o.require(vanish, "a generator does not vanish on the forms");
  }
}

void criterion_r4(Outcome& o) {
  const CoxRing& ring = cox_ring(4);
  const MonomialIdeal expected(std::vector<Monomial>{ring.parse_monomial("f23*f14"), ring.parse_monomial("e1*f14"),
                                                     ring.parse_monomial("e1*f13"), ring.parse_monomial("e2*f12"),
                                                     ring.parse_monomial("e1*f12")});
  const auto gb = buchberger(build_qr(standard_points<Rational>()), reference_tables().order(4));
  o.require(gb.initial() == expected, "initial ideal at the standard points");
  const DivisorClass mk = -DivisorClass::canonical(4);
  KPolynomial closed{{DivisorClass::zero(4), 1}, {mk, -1}};
  for (const DivisorClass& c : enumerate_conics(4)) {
    closed[c] -= 1;
    closed[mk - c] += 1;
  }
  const KPolynomial k = k_polynomial(ring, expected);
  o.detail << " K-polynomial " << k.size() << " terms";
  o.require(k == closed && k.size() == 12, "K-polynomial closed form");
  o.require(counts_ok(ring, expected, 6), "stable counts m <= 6");
  o.require(hs_invariant(ring, expected, weyl_group(4).generators()), "W_4-invariance");
}

void criterion_r5(Outcome& o) {
  const CoxRing& ring = cox_ring(5);
  const MonomialIdeal m = reference_tables().initial_ideal(5);
  o.require(m.size() == 20, "20 tabulated monomials");
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto gb = buchberger(build_qr(sample_points<Rational>(5, 500 + s, {})), reference_tables().order(5));
    o.require(gb.initial() == m, "initial ideal at sample " + std::to_string(s));
  }
  const KPolynomial k = k_polynomial(ring, m);
  const bool printed = k == m5_closed_form(m5_sets(M5Reading::printed));
  const bool corrected = k == m5_closed_form(m5_sets(M5Reading::corrected));
  o.detail << " 5 configurations; closed form with printed sets " << (printed ? "holds" : "does not hold")
           << ", with G = -K + E_5 and 2 t^J (J: conic triples meeting pairwise once) "
           << (corrected ? "holds" : "does not hold");
  o.require(printed, "K-polynomial with the printed set definitions");
  o.require(counts_ok(ring, m, 5), "stable counts m <= 5");
}

void criterion_r6(Outcome& o) {
  const CoxRing& ring = cox_ring(6);
  const ReferenceTables& t = reference_tables();
  const MonomialIdeal m = t.initial_ideal(6);
  o.require(m.size() == 116, "116 generators");
  std::uint32_t used = 0;
  for (const Monomial& u : m.generators()) used |= u.support_mask();
  o.require((used >> ring.index("g5") & 1u) == 0, "g5 appears");
  const KPolynomial k = k_polynomial(ring, m);
  bool invariant = true;
  for (const WeylElement& g : weyl_group(6).generators()) invariant = invariant && act(g, k) == k;
  o.require(invariant, "K-polynomial invariance");
  o.require(counts_ok(ring, m, 4), "stable counts m <= 4");
  VerifyParams p;
  p.seed = 600;
  p.samples = 3;
  const VerificationReport rep = verify("M6a", p);
  o.require(rep.passed(), "row checks at three non-Eckart configurations");
  o.detail << " rows checked at 3 configurations, " << t.t2.quarantined_count() << " quarantined rows reported";
  const SampleConstraints c{.general_position = true, .no_eckart = true};
  const bool a = buchberger(build_qr(sample_points<Fp32003>(6, 601, c)), t.order(6)).initial() == m;
  const bool b = buchberger(build_qr(sample_points<Fp65521>(6, 602, c)), t.order(6)).initial() == m;
  o.require(a && b, "Groebner basis over Z/32003 and Z/65521");
  o.detail << "; full GB equality over Z/32003 and Z/65521";
}

void criterion_symmetry(Outcome& o) {
  const ReferenceTables& t = reference_tables();
  {
    const CoxRing& ring = cox_ring(4);
    const auto gens = build_qr(standard_points<Rational>());
    const WeylGroup& w = weyl_group(4);
    std::vector<WeylElement> elements = w.generators();
    std::mt19937_64 rng(70);
    for (int i = 0; i < 10; ++i) elements.push_back(w[rng() % w.order()]);
    bool ok = true;
    for (const WeylElement& g : elements) ok = ok && twisted_initial_check(ring, gens, t.order(4), g).equal();
    o.require(ok, "twisted initial ideals for r = 4");
    o.detail << " twist: " << elements.size() << " elements;";
  }
  for (int r = 4; r <= 5; ++r) {
    const CoxRing& ring = cox_ring(r);
    const auto gens = build_qr(r == 4 ? standard_points<Rational>() : sample_points<Rational>(5, 71, {}));
    std::mt19937_64 rng(72 + static_cast<std::uint64_t>(r));
    int weights = 0, redraws = 0;
    bool ok = true;
    while (weights < 5) {
      std::vector<std::int64_t> w(static_cast<std::size_t>(ring.num_variables()));
      for (auto& x : w) x = static_cast<std::int64_t>(rng() % 100000) + 1;
      std::vector<ConeReport<Rational>> reps;
      for (const WeylElement& g : weyl_group(r).generators()) reps.push_back(groebner_cone_spotcheck(ring, gens, w, g));
      if (!std::all_of(reps.begin(), reps.end(), [](const auto& c) { return c.generic; })) {
        ++redraws;
        continue;
      }
      for (const auto& c : reps) ok = ok && c.holds();
      ++weights;
    }
    o.require(ok, "cone spot check r = " + std::to_string(r));
    o.detail << " cones r=" << r << ": 5 weights x " << weyl_group(r).generators().size() << " generators ("
             << redraws << " non-generic redrawn);";
  }
  VerifyParams p;
  p.seed = 73;
  o.require(verify("eckart-counterexample", p).passed(), "Eckart dependency then independence");
  o.detail << " Eckart counterexample reproduced";
}

void criterion_search(Outcome& o) {
  const QuadraticSearch s = quadratic_search(5, 80, 1, reference_tables());
  o.detail << " " << s.nodes << " nodes, " << s.leaves << " leaves, " << s.classes.size() << " orbit classes, "
           << s.realized_count() << " realized";
  o.require(s.realized_count() == 18, "18 realized classes");
  std::set<std::size_t> distinct;
  bool rows = s.table_row_class.size() == 18;
  for (std::size_t i = 0; i < s.table_row_class.size(); ++i) {
    rows = rows && s.table_row_class[i] && s.table_row_realized[i] && s.classes[*s.table_row_class[i]].realized;
    if (s.table_row_class[i]) distinct.insert(*s.table_row_class[i]);
  }
  o.require(rows && distinct.size() == 18, "each weight row realizes its own class");
  o.require(s.reference_class && s.classes[*s.reference_class].realized, "class of M_5");
}

void criterion_obstruction(Outcome& o) {
  VerifyParams p;
  p.seed = 90;
  p.samples = 25;
  const VerificationReport rep = verify("small-candidates", p);
  for (const Check& c : rep.checks) o.require(c.status == CheckStatus::pass, c.name);
  o.detail << " 2925 triples, 25 sampled candidates";
}

template <class S>
void oracle_for(int r, Outcome& o) {
  const CoxRing& ring = cox_ring(r);
  const auto real = realize(sample_points<S>(r, 1000 + static_cast<std::uint64_t>(r), {}));
  const MonomialIdeal in = buchberger(build_qr(real), reference_tables().order(r)).initial();
  std::mt19937_64 rng(1010 + static_cast<std::uint64_t>(r));
  std::vector<std::vector<Monomial>> by_degree;
  for (int k = 1; k <= 4; ++k) by_degree.push_back(ring.monomials_of_degree(k));
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& pool = by_degree[rng() % by_degree.size()];
    const DivisorClass d = ring.pic_degree(pool[rng() % pool.size()]);
    const auto corank = static_cast<std::int64_t>(ring.enumerate_monomials(d).size()) -
                        static_cast<std::int64_t>(relations_in_degree(real, d).size());
    if (hilbert_at(ring, in, d) != corank) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches for r = " + std::to_string(r));
  o.detail << " r=" << r << ": 100 degrees;";
}

void criterion_oracle(Outcome& o) {
  oracle_for<Rational>(4, o);
  oracle_for<Rational>(5, o);
  oracle_for<Rational>(6, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail; see the notes printed with them");
  app.add_option("--only", only, "run a subset");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "classification", 1, criterion_classification},
      {2, "Weyl groups", 30, criterion_weyl},
      {3, "Q_r construction", 10, criterion_construction},
      {4, "r=4 end-to-end", 10, criterion_r4},
      {5, "r=5 end-to-end", 120, criterion_r5},
      {6, "r=6 initial ideal", 1800, criterion_r6},
      {7, "symmetry machinery", 600, criterion_symmetry},
      {8, "quadratic initial ideal search", 1800, criterion_search},
      {9, "25-variable obstruction", 300, criterion_obstruction},
      {10, "Hilbert oracle cross-validation", 600, criterion_oracle},
  };
  std::set<int> failures;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.ok = false;
      o.detail << " [over the " << c.budget_s << " s budget]";
    }
    if (!o.ok) failures.insert(c.id);
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << std::fixed
              << std::setprecision(2) << secs << " s):" << o.detail.str() << std::endl;
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::set<int> expected_run;
  for (int id : expected) {
    if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected_run.insert(id);
  }
  if (!expected_run.empty()) {
    std::cout << "expected failures:";
    for (int id : expected_run) std::cout << " " << id;
    std::cout << (failures == expected_run ? " (as expected)" : " (mismatch)") << "\n";
  }
  return failures == expected_run ? 0 : 1;
}
