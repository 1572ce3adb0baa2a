#include "coxlab/lab.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace coxlab;

namespace {

ReferenceTables mutated(const std::string& stem, const std::string& from, const std::string& to) {
  TableSources sources = embedded_table_sources();
  auto& text = sources.at(stem);
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  return load_tables(sources);
}

VerificationReport run(const std::string& id, const ReferenceTables* tables = nullptr, std::uint64_t seed = 1) {
  VerifyParams p;
  p.seed = seed;
  p.tables = tables;
  return verify(id, p);
}

const Check* find_check(const VerificationReport& rep, const std::string& prefix) {
  for (const Check& c : rep.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

bool failed(const VerificationReport& rep, const std::string& prefix) {
  const Check* c = find_check(rep, prefix);
  return c != nullptr && c->status == CheckStatus::fail;
}

}  // namespace

TEST_CASE("point files") {
  const auto pts = parse_points(nlohmann::json::parse(R"([[1, 0, "0"], ["1/2", -3, 1], [0, 0, 1]])"));
  REQUIRE(pts.size() == 3);
  CHECK(pts[1][0] == Rational(1, 2));
  CHECK(format_point(pts[1]) == "[1/2:-3:1]");
  CHECK_THROWS_AS(parse_points(nlohmann::json::parse("[[1, 2]]")), std::invalid_argument);
  CHECK_THROWS_AS(parse_points(nlohmann::json::parse("[[1, 2, 1.5]]")), std::invalid_argument);
  CHECK_THROWS_AS(parse_points(nlohmann::json::parse("{}")), std::invalid_argument);
}

TEST_CASE("sampling") {
  CHECK(check_general_position(standard_points<Rational>()).ok);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto with = sample_points<Rational>(6, seed, {.with_eckart = true});
    CHECK(has_eckart_point(realize(with)).has_value());
    const auto without = sample_points<Rational>(6, seed, {.no_eckart = true});
    CHECK_FALSE(has_eckart_point(realize(without)).has_value());
    CHECK(check_general_position(without).ok);
    CHECK(sample_points<Fp32003>(5, seed, {}) == sample_points<Fp32003>(5, seed, {}));
  }
  CHECK(sample_points<Rational>(5, 1, {}) != sample_points<Rational>(5, 2, {}));
  CHECK_THROWS_AS(sample_points<Rational>(6, 1, {}, 0), SamplingError);
  CHECK_THROWS_AS(sample_points<Rational>(5, 1, {.with_eckart = true}), std::invalid_argument);
  CHECK_THROWS_AS(sample_points<Rational>(6, 1, {.no_eckart = true, .with_eckart = true}), std::invalid_argument);
}

TEST_CASE("report plumbing") {
  VerificationReport rep;
  CHECK_FALSE(rep.passed());
  rep.add("a", true);
  CHECK(rep.passed());
  rep.skip("b", "precondition");
  CHECK_FALSE(rep.passed());
  const auto j = rep.to_json();
  CHECK(j["schema"] == report_schema);
  CHECK(j["checks"][1]["status"] == "skip");
  CHECK(rep.summary().find("[skip] b") != std::string::npos);
  CHECK_THROWS_AS(verify("no-such-lemma"), std::invalid_argument);
  VerifyParams p;
  p.field = "7";
  CHECK_THROWS_AS(verify("M4", p), std::invalid_argument);
}

TEST_CASE("closed form of the K-polynomial of M_5") {
  const CoxRing& ring = cox_ring(5);
  const MonomialIdeal m = reference_tables().initial_ideal(5);
  const KPolynomial k = k_polynomial(ring, m);
  const M5Sets printed = m5_sets(M5Reading::printed);
  const M5Sets corrected = m5_sets(M5Reading::corrected);
  CHECK(printed.c.size() == 10);
  CHECK(printed.d.size() == 16);
  CHECK(printed.h.size() == 10);
  CHECK(printed.g == std::set<DivisorClass>{-DivisorClass::canonical(5)});
  CHECK(printed.j.empty());
  CHECK(corrected.g.size() == 16);
  CHECK(corrected.j.size() == 80);
  CHECK(m5_closed_form(printed) != k);
  CHECK(m5_closed_form(corrected) == k);

  // Oracle: the closed form, read as a Hilbert numerator, against direct monomial counts.
  std::mt19937_64 rng(11);
  const KPolynomial closed = m5_closed_form(corrected);
  for (int trial = 0; trial < 40; ++trial) {
    ClassVector v(6);
    v(0) = static_cast<int>(rng() % 5);
    for (int i = 1; i <= 5; ++i) v(i) = static_cast<int>(rng() % 4) - 2;
    const DivisorClass d(v);
    CHECK(hilbert_from_k_polynomial(ring, closed, d) == hilbert_at(ring, m, d));
  }
  // The closed form is invariant: each of its pieces is a W_5-stable set.
  for (const WeylElement& g : weyl_group(5).generators()) CHECK(act(g, closed) == closed);
}

TEST_CASE("verifiers on their default configurations") {
  for (const std::string id : {"M4", "M5a", "M6a", "M6b", "relations", "ugly1", "cubicgenerator",
                               "eckart-counterexample", "small-candidates"}) {
    CAPTURE(id);
    const VerificationReport rep = run(id);
    CHECK(rep.passed());
    for (const Check& c : rep.checks) {
      CAPTURE(c.name);
      CHECK(c.status == CheckStatus::pass);
    }
  }
  const VerificationReport m5b = run("M5b");
  CHECK(failed(m5b, "K-polynomial is (alpha + alpha*) + t^J"));
  const Check* corrected = find_check(m5b, "K-polynomial is (alpha + alpha*) + 2 t^J");
  REQUIRE(corrected != nullptr);
  CHECK(corrected->status == CheckStatus::pass);
  const std::size_t passing = std::count_if(m5b.checks.begin(), m5b.checks.end(),
                                            [](const Check& c) { return c.status == CheckStatus::pass; });
  CHECK(passing + 1 == m5b.checks.size());

  const VerificationReport m6a = run("M6a");
  CHECK(m6a.notes.size() == reference_tables().t2.quarantined_count());
}

TEST_CASE("reports are reproducible") {
  for (const std::string id : {"M5a", "M6a", "ugly1"}) {
    VerifyParams p;
    p.seed = 5;
    const auto a = verify(id, p).to_json().dump();
    p.workers = 3;
    CHECK(verify(id, p).to_json().dump() == a);
    p.seed = 6;
    CHECK(verify(id, p).to_json().dump() != a);
  }
}

TEST_CASE("fields") {
  for (const std::string f : {"QQ", "32003", "65521"}) {
    VerifyParams p;
    p.field = f;
    const auto rep = verify("M4", p);
    CHECK(rep.passed());
    CHECK(rep.configuration["field"].get<std::string>().find(f == "QQ" ? "QQ" : f) != std::string::npos);
  }
}

TEST_CASE("supplied points outside the verifier's hypotheses are skipped") {
  VerifyParams p;
  p.points = sample_points<Rational>(6, 3, {.with_eckart = true});
  const auto m6a = verify("M6a", p);
  REQUIRE(m6a.checks.size() == 1);
  CHECK(m6a.checks[0].status == CheckStatus::skip);
  CHECK_FALSE(m6a.passed());

  p.points = sample_points<Rational>(6, 3, {.no_eckart = true});
  const auto eckart = verify("eckart-counterexample", p);
  CHECK_FALSE(eckart.passed());
  CHECK(eckart.checks.back().status == CheckStatus::skip);

  // Three collinear points.
  p.points = std::vector<PlanePoint<Rational>>{{1, 0, 1}, {2, 0, 1}, {3, 0, 1}, {0, 1, 1}, {5, 7, 1}, {-2, 3, 1}};
  CHECK(verify("relations", p).checks.back().status == CheckStatus::skip);

  // Supplied points that meet the hypotheses are used as given.
  p.points = standard_points<Rational>();
  const auto m4 = verify("M4", p);
  CHECK(m4.passed());
  CHECK(m4.configuration["samples"][0][3] == "[1:1:1]");
}

TEST_CASE("corrupted tables are detected by every verifier") {
  SUBCASE("M4") {
    const auto t = mutated("m4", "e2*f12", "e3*f13");
    const auto rep = run("M4", &t);
    CHECK(failed(rep, "generators are initial terms"));
    CHECK(failed(rep, "Groebner basis initial ideal equals M_4"));
  }
  SUBCASE("M5a") {
    const auto t = mutated("m5", "e4*f14=19", "e4*f14=20");
    CHECK(failed(run("M5a", &t), "tabulated weights"));
    const auto u = mutated("orders", "e4=13", "e4=3");
    CHECK_FALSE(run("M5a", &u).passed());
  }
  SUBCASE("M5b") {
    const auto t = mutated("m5", "e4*f14=19 e3*f13=17 | e2*f12=16 e5*f15=14", "e4*f14=19 e5*f15=14 | e2*f12=16 e3*f13=17");
    const auto rep = run("M5b", &t);
    CHECK(failed(rep, "generators omit e5"));
    CHECK(failed(rep, "K-polynomial is (alpha + alpha*) + 2 t^J"));
  }
  SUBCASE("M6a") {
    const auto t = mutated("t1", "l-e1: e2*f12 e6*f16 e4*f14 | e3*f13", "l-e1: e3*f13 e6*f16 e4*f14 | e2*f12");
    const auto rep = run("M6a", &t);
    CHECK(failed(rep, "quadratic rows"));
    CHECK(failed(rep, "every generator of M_6"));
  }
  SUBCASE("M6b") {
    const auto t = mutated("t1", "f23*f16 g4*e5 f12*f36 | f26*f13 e4*g5", "f23*f16 g4*e5 e4*g5 | f26*f13 f12*f36");
    const auto rep = run("M6b", &t);
    CHECK(failed(rep, "generators omit g5"));
  }
  SUBCASE("relations") {
    const auto t = mutated("t2", "2l-e1-e2-e3: e5*f13*f25 |", "2l-e1-e2-e3: e5*f13*f25 f23*e5*f15 |");
    CHECK(failed(run("relations", &t), "k[E_6]/M_6 has dimension 3"));
  }
  SUBCASE("ugly1") {
    const auto t = mutated("ugly1", "f34*f16*f25", "f35*f16*f24");
    CHECK_FALSE(run("ugly1", &t).passed());
  }
  SUBCASE("cubicgenerator") {
    const auto t = mutated("t3", "f46*f13*f25 | e2*f25*g5", "e2*f25*g5 | f46*f13*f25");
    CHECK(failed(run("cubicgenerator", &t), "first -K monomial is the largest"));
  }
  SUBCASE("bp-conjecture") {
    const auto t = mutated("m4", "e1*f14", "e2*f14");
    VerifyParams p;
    p.tables = &t;
    p.r = 4;
    const auto rep = verify("bp-conjecture", p);
    CHECK(failed(rep, "r=4: in(Q_4) = M_4"));
    CHECK(failed(rep, "r=4: conditions hold"));
  }
  SUBCASE("small-candidates") {
    // Every quadratic row contributes all five monomials.
    TableSources sources = embedded_table_sources();
    std::istringstream in(sources.at("t1"));
    std::string text;
    for (std::string line; std::getline(in, line);) {
      const auto bar = line.find(" | ");
      if (bar != std::string::npos) line.erase(bar, 2).append(" |");
      text += line + "\n";
    }
    sources.at("t1") = text;
    const auto t = load_tables(sources);
    CHECK(failed(run("small-candidates", &t), "codimension of in(Q_6) is 18"));
  }
  SUBCASE("quadratic-search") {
    TableSources sources = embedded_table_sources();
    auto& t4 = sources.at("t4");
    const auto first = t4.find("25 21 11");
    const auto second = t4.find("18 15 12");
    REQUIRE(first != std::string::npos);
    const std::string row = t4.substr(second, t4.find('\n', second) - second + 1);
    t4.replace(first, t4.find('\n', first) - first + 1, row);
    const auto t = load_tables(sources);
    const auto rep = run("quadratic-search", &t);
    CHECK(failed(rep, "each weight row realizes its own class"));
    CHECK(find_check(rep, "exactly 18 realizable")->status == CheckStatus::pass);
  }
}

TEST_CASE("eckart verifier rejects a configuration that has no concurrency") {
  // The corrupted input here is the configuration: the verifier needs f12, f34, f56 concurrent.
  VerifyParams p;
  auto pts = sample_points<Rational>(6, 8, {.with_eckart = true});
  std::swap(pts[1], pts[2]);
  p.points = pts;
  const auto rep = verify("eckart-counterexample", p);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("quadratic search for r = 4") {
  const QuadraticSearch s = quadratic_search(4, 1, 1, reference_tables());
  CHECK(s.leaves > 0);
  REQUIRE(s.reference_class.has_value());
  CHECK(s.classes[*s.reference_class].realized);
  std::size_t total = 0;
  for (const auto& c : s.classes) total += c.orbit_size;
  CHECK(total == s.leaves);
  const auto j = to_json(s);
  CHECK(j["realized"] == s.realized_count());
  CHECK(j["classes"].size() == s.classes.size());
}
