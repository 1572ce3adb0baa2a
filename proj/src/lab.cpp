#include "coxlab/lab.hpp"

#include "coxlab/symmetry.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace coxlab {

using json = nlohmann::json;

std::vector<PlanePoint<Rational>> parse_points(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("points: expected a list of triples");
  std::vector<PlanePoint<Rational>> out;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 3) throw std::invalid_argument("points: every point needs three coordinates");
    PlanePoint<Rational> q;
    for (std::size_t k = 0; k < 3; ++k) {
      if (p[k].is_number_integer()) q[k] = Rational(p[k].get<long>());
      else if (p[k].is_string()) q[k] = Rational::parse(p[k].get<std::string>());
      else throw std::invalid_argument("points: coordinates are integers or rational strings");
    }
    out.push_back(q);
  }
  return out;
}

void VerificationReport::add(std::string name, bool ok, std::string detail, json witness) {
  checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail), std::move(witness)});
}

void VerificationReport::skip(std::string name, std::string reason) {
  checks.push_back({std::move(name), CheckStatus::skip, std::move(reason), nullptr});
}

bool VerificationReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::pass; });
}

namespace {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "fail";
}

}  // namespace

json VerificationReport::to_json() const {
  json out;
  out["schema"] = report_schema;
  out["lemma"] = lemma;
  out["configuration"] = configuration;
  out["passed"] = passed();
  json list = json::array();
  for (const Check& c : checks) {
    json j{{"name", c.name}, {"status", status_name(c.status)}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.witness.is_null()) j["witness"] = c.witness;
    list.push_back(std::move(j));
  }
  out["checks"] = std::move(list);
  out["notes"] = notes;
  return out;
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  out << lemma << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const Check& c : checks) {
    out << "  [" << status_name(c.status) << "] " << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  for (const std::string& n : notes) out << "  note: " << n << "\n";
  return out.str();
}

namespace {

std::int64_t binom2(int m) { return static_cast<std::int64_t>(m + 2) * (m + 1) / 2; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 step, so nearby seeds give unrelated streams
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int workers, F&& fn) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t extra = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1))) - (n > 0 ? 1 : 0);
  for (std::size_t w = 0; w < extra; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

template <class S>
S from_rational(const Rational& q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return q;
  } else {
    return S(q);
  }
}

template <class S>
json points_json(const std::vector<PlanePoint<S>>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(format_point(p));
  return out;
}

json monomials_json(const CoxRing& ring, const std::vector<Monomial>& ms) {
  json out = json::array();
  for (const Monomial& m : ms) out.push_back(ring.format(m));
  return out;
}

bool involves(const MonomialIdeal& m, int v) {
  return std::any_of(m.generators().begin(), m.generators().end(),
                     [v](const Monomial& u) { return (u.support_mask() >> v & 1u) != 0; });
}

std::pair<bool, json> binomial_counts(const CoxRing& ring, const MonomialIdeal& m, int max_m) {
  bool ok = true;
  json values = json::array();
  for (int k = 0; k <= max_m; ++k) {
    const StableCount sc = stable_count(ring, m, k);
    values.push_back(sc.value);
    ok = ok && sc.stable && sc.value == binom2(k);
  }
  return {ok, values};
}

KPolynomial strip(KPolynomial k) {
  std::erase_if(k, [](const auto& kv) { return kv.second == 0; });
  return k;
}

DivisorClass anticanonical(int r) { return -DivisorClass::canonical(r); }

/// Calls fn.template operator()<S>() for the field named by `field`, or for `fallback`.
template <class F>
void with_field(const std::string& field, const std::string& fallback, F&& fn) {
  const std::string f = field == "auto" ? fallback : field;
  if (f == "QQ") fn.template operator()<Rational>();
  else if (f == "32003") fn.template operator()<Fp32003>();
  else if (f == "65521") fn.template operator()<Fp65521>();
  else throw std::invalid_argument("unknown field '" + field + "' (expected QQ, 32003 or 65521)");
}

std::string constraint_name(SampleConstraints c) {
  if (c.with_eckart) return "with_eckart";
  if (c.no_eckart) return "no_eckart";
  return c.general_position ? "general_position" : "none";
}

/// Configurations for a verifier: the supplied points, or `count` seeded samples.
/// Supplied points that violate the constraints become a skipped check.
template <class S>
std::vector<std::vector<PlanePoint<S>>> draw(int r, const VerifyParams& p, SampleConstraints c, int count,
                                             VerificationReport& rep) {
  std::vector<std::vector<PlanePoint<S>>> out;
  rep.configuration["field"] = S::field_name();
  rep.configuration["constraints"] = constraint_name(c);
  if (p.points) {
    std::vector<PlanePoint<S>> pts;
    for (const auto& q : *p.points) pts.push_back({from_rational<S>(q[0]), from_rational<S>(q[1]), from_rational<S>(q[2])});
    rep.configuration["samples"] = json::array({points_json(pts)});
    if (static_cast<int>(pts.size()) != r) {
      rep.skip("supplied points", "expected " + std::to_string(r) + " points, got " + std::to_string(pts.size()));
      return out;
    }
    try {
      if (!check_general_position(pts).ok) {
        rep.skip("supplied points", "not in general position");
        return out;
      }
      if (c.no_eckart || c.with_eckart) {
        const bool eckart = has_eckart_point(realize(pts)).has_value();
        if (eckart != c.with_eckart) {
          rep.skip("supplied points", c.with_eckart ? "no Eckart point" : "has an Eckart point");
          return out;
        }
      }
    } catch (const std::exception& e) {
      rep.skip("supplied points", e.what());
      return out;
    }
    out.push_back(std::move(pts));
    return out;
  }
  const int n = p.samples > 0 ? p.samples : count;
  rep.configuration["seed"] = p.seed;
  json samples = json::array();
  for (int k = 0; k < n; ++k) {
    out.push_back(sample_points<S>(r, derive_seed(p.seed, static_cast<std::uint64_t>(k)), c));
    samples.push_back(points_json(out.back()));
  }
  rep.configuration["samples"] = samples;
  return out;
}

/// Degree pieces of an ideal, computed once each.
template <class S>
class PieceCache {
 public:
  PieceCache(const CoxRing& ring, std::vector<Polynomial<S>> gens) : ring_(ring), gens_(std::move(gens)) {}
  const GradedPiece<S>& operator()(const DivisorClass& d) {
    auto it = cache_.find(d);
    if (it == cache_.end()) it = cache_.emplace(d, graded_piece(ring_, gens_, d)).first;
    return it->second;
  }
  const std::vector<Polynomial<S>>& generators() const { return gens_; }

 private:
  const CoxRing& ring_;
  std::vector<Polynomial<S>> gens_;
  std::map<DivisorClass, GradedPiece<S>> cache_;
};

template <class S>
bool full_support(const Vector<S>& row, const GradedPiece<S>& piece, const std::vector<Monomial>& support) {
  for (const Monomial& m : support) {
    const auto j = std::find(piece.monomials.begin(), piece.monomials.end(), m) - piece.monomials.begin();
    if (coxlab::is_zero(row(j))) return false;
  }
  return true;
}

template <class S>
Eigen::Index forms_rank(const Realization<S>& real, const std::vector<Monomial>& monos) {
  const DivisorClass d = cox_ring(real.r).pic_degree(monos.front());
  return rank<S>(form_matrix(real, monos, d.line_degree()));
}

// ---------------------------------------------------------------------------------
// r = 4

template <class S>
void run_m4(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(4);
  std::vector<std::vector<PlanePoint<S>>> configs;
  if (p.points) {
    configs = draw<S>(4, p, {}, 1, rep);
  } else {
    configs.push_back(standard_points<S>());
    rep.configuration["field"] = S::field_name();
    rep.configuration["samples"] = json::array({points_json(configs.back())});
  }
  if (configs.empty()) return;
  const auto& pts = configs.front();
  const MonomialIdeal m = t.initial_ideal(4);
  const MonomialOrder ord = t.order(4);
  rep.add("generators omit e4", !involves(m, ring.index("e4")));

  const auto gens = build_qr(pts);
  std::vector<Monomial> missing;
  for (const Monomial& u : m.generators()) {
    const auto terms = initial_terms(graded_piece(ring, gens, ring.pic_degree(u)), ord);
    if (std::find(terms.begin(), terms.end(), u) == terms.end()) missing.push_back(u);
  }
  rep.add("generators are initial terms of Q_4", missing.empty(), {}, monomials_json(ring, missing));

  KPolynomial expected;
  const DivisorClass mk = anticanonical(4);
  expected[DivisorClass::zero(4)] += 1;
  for (const DivisorClass& c : enumerate_conics(4)) {
    expected[c] -= 1;
    expected[mk - c] += 1;
  }
  expected[mk] -= 1;
  expected = strip(expected);
  const KPolynomial k = k_polynomial(ring, m);
  rep.add("K-polynomial is 1 - t^C + t^(-K-C) - t^(-K)", k == expected, std::to_string(k.size()) + " terms");

  const auto [bin_ok, values] = binomial_counts(ring, m, 6);
  rep.add("stable counts binom(m+2,2) for m <= 6", bin_ok, {}, values);
  rep.add("Hilbert series invariant under W_4", hs_invariant(ring, m, weyl_group(4).generators()));

  BuchbergerStats stats;
  const auto gb = buchberger(gens, ord, &stats);
  rep.add("Groebner basis initial ideal equals M_4", gb.initial() == m, {},
          json{{"basis_size", gb.basis.size()}, {"max_degree", gb.max_degree()}, {"pairs", stats.pairs_considered}});
}

// ---------------------------------------------------------------------------------
// r = 5

void check_m5_table(const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(5);
  const MonomialOrder ord = t.order(5);
  json bad = json::array();
  for (const TableRow& row : t.m5.rows) {
    if (row.quarantined()) {
      bad.push_back(row.label + ": quarantined");
      continue;
    }
    const auto monos = row.parsed();
    if (monos.size() != 4 || row.weights.size() != 4 || row.lead_count != 2) {
      bad.push_back(row.label + ": malformed row");
      continue;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (ord.weight(monos[i]) != row.weights[i]) bad.push_back(row.label + ": listed weight of " + ring.format(monos[i]));
    }
    const auto lo = std::min(ord.weight(monos[0]), ord.weight(monos[1]));
    const auto hi = std::max(ord.weight(monos[2]), ord.weight(monos[3]));
    if (lo <= hi) bad.push_back(row.label + ": lead pair does not outweigh the rest");
  }
  rep.add("tabulated weights: lead pair outweighs the other two in every conic degree", bad.empty(), {}, bad);
}

template <class S>
void run_m5a(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  check_m5_table(t, rep);
  const auto configs = draw<S>(5, p, {}, 5, rep);
  if (configs.empty()) return;
  const CoxRing& ring = cox_ring(5);
  const MonomialIdeal m = t.initial_ideal(5);
  const MonomialOrder ord = t.order(5);
  struct Outcome {
    std::vector<Monomial> missing;
    bool equal = false;
    std::size_t basis = 0;
  };
  const auto outcomes = parallel_map<Outcome>(configs.size(), p.workers, [&](std::size_t i) {
    Outcome o;
    const auto gens = build_qr(configs[i]);
    for (const Monomial& u : m.generators()) {
      const auto terms = initial_terms(graded_piece(ring, gens, ring.pic_degree(u)), ord);
      if (std::find(terms.begin(), terms.end(), u) == terms.end()) o.missing.push_back(u);
    }
    const auto gb = buchberger(gens, ord);
    o.equal = gb.initial() == m;
    o.basis = gb.basis.size();
    return o;
  });
  bool contained = true;
  bool equal = true;
  json w = json::array();
  for (const Outcome& o : outcomes) {
    contained = contained && o.missing.empty();
    equal = equal && o.equal;
    w.push_back({{"missing", monomials_json(ring, o.missing)}, {"basis_size", o.basis}, {"initial_equal", o.equal}});
  }
  rep.add("M_5 contained in the initial ideal of Q_5 at every sample", contained, {}, w);
  rep.add("Groebner basis initial ideal equals M_5 at every sample", equal);
}

void run_m5b(const VerifyParams&, const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(5);
  const MonomialIdeal m = t.initial_ideal(5);
  rep.add("generators omit e5", !involves(m, ring.index("e5")));
  rep.add("Hilbert series invariant under W_5", hs_invariant(ring, m, weyl_group(5).generators()));

  const KPolynomial k = k_polynomial(ring, m);
  auto sizes = [](const M5Sets& s) {
    return json{{"C", s.c.size()}, {"D", s.d.size()}, {"F", s.f.size()},
                {"G", s.g.size()}, {"H", s.h.size()}, {"J", s.j.size()}};
  };
  const M5Sets printed = m5_sets(M5Reading::printed);
  const M5Sets corrected = m5_sets(M5Reading::corrected);
  rep.add("K-polynomial is (alpha + alpha*) + t^J + 12 t^H, sets as printed", k == m5_closed_form(printed),
          std::to_string(k.size()) + " terms", sizes(printed));
  rep.add("K-polynomial is (alpha + alpha*) + 2 t^J + 12 t^H, G = -K + E_5, J = conic triples meeting pairwise once",
          k == m5_closed_form(corrected), {}, sizes(corrected));
  rep.add("ten conic classes", printed.c.size() == 10);
  bool twelve = !printed.h.empty();
  for (const auto& x : printed.h) {
    const auto it = k.find(x);
    twelve = twelve && it != k.end() && it->second == 12;
  }
  rep.add("coefficient of every t^h, h in H, is 12", twelve, std::to_string(printed.h.size()) + " classes");
  const auto [bin_ok, values] = binomial_counts(ring, m, 5);
  rep.add("stable counts binom(m+2,2) for m <= 5", bin_ok, {}, values);
}

// ---------------------------------------------------------------------------------
// r = 6

/// Element of the -K piece supported on the tabulated monomials with nonzero first coefficient.
template <class S>
std::optional<Polynomial<S>> cubic_generator(PieceCache<S>& pieces, const std::vector<Monomial>& row) {
  const GradedPiece<S>& piece = pieces(anticanonical(6));
  const Matrix<S> sub = supported_subspace(piece, row);
  const auto lead = std::find(piece.monomials.begin(), piece.monomials.end(), row.front()) - piece.monomials.begin();
  for (Eigen::Index k = 0; k < sub.rows(); ++k) {
    if (!coxlab::is_zero(sub(k, lead))) return piece_element(piece, Vector<S>(sub.row(k).transpose()));
  }
  return std::nullopt;
}

template <class S>
void cubic_generator_checks(const std::vector<std::vector<PlanePoint<S>>>& configs, const VerifyParams& p,
                            const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(6);
  if (t.t3.rows.empty() || t.t3.rows.front().quarantined()) {
    rep.skip("degree -K cubic generator", "the -K row is missing or quarantined");
    return;
  }
  const auto row = t.t3.rows.front().parsed();
  const MonomialOrder ord = t.order(6);
  bool leads = true;
  for (std::size_t i = 1; i < row.size(); ++i) leads = leads && ord.less(row[i], row.front());
  rep.add("first -K monomial is the largest of its row", leads);
  const auto found = parallel_map<std::optional<std::string>>(configs.size(), p.workers, [&](std::size_t i) {
    PieceCache<S> pieces(ring, build_qr(configs[i]));
    const auto f = cubic_generator(pieces, row);
    if (!f) return std::optional<std::string>{};
    // The same monomial must also be an initial term of the piece itself.
    const auto terms = initial_terms(pieces(anticanonical(6)), ord);
    if (std::find(terms.begin(), terms.end(), row.front()) == terms.end()) return std::optional<std::string>{};
    return std::optional<std::string>{format(ring, *f)};
  });
  bool ok = true;
  json w = json::array();
  for (const auto& f : found) {
    ok = ok && f.has_value();
    w.push_back(f ? json(*f) : json(nullptr));
  }
  rep.add("Q_6 has a -K element on the row with a_1 != 0 at every sample", ok, {}, w);
}

template <class S>
json t1_failures(const Realization<S>& real, PieceCache<S>& pieces, const Table& t1, const MonomialOrder& ord) {
  const CoxRing& ring = cox_ring(6);
  json bad = json::array();
  for (const TableRow& row : t1.rows) {
    if (row.quarantined()) continue;
    const auto monos = row.parsed();
    const std::size_t n = monos.size();
    if (n < 3 || row.lead_count + 2 > n) {
      bad.push_back(row.label + ": malformed row");
      continue;
    }
    const DivisorClass d = ring.pic_degree(monos.front());
    const GradedPiece<S>& piece = pieces(d);
    for (std::size_t i = 0; i < row.lead_count; ++i) {
      const std::vector<Monomial> triple{monos[i], monos[n - 2], monos[n - 1]};
      const Matrix<S> sub = supported_subspace(piece, triple);
      const bool relation = sub.rows() == 1 && full_support<S>(sub.row(0).transpose(), piece, triple);
      const bool dependent = forms_rank(real, triple) == 2;
      const bool leads = ord.less(monos[n - 2], monos[i]) && ord.less(monos[n - 1], monos[i]);
      if (!relation || !dependent || !leads) {
        bad.push_back(row.label + ": " + ring.format(monos[i]) + (relation ? "" : " no full relation") +
                      (dependent ? "" : " sections independent") + (leads ? "" : " not leading"));
      }
    }
  }
  return bad;
}

template <class S>
json t2_failures(const Realization<S>& real, PieceCache<S>& pieces, const Table& t2, const MonomialOrder& ord) {
  const CoxRing& ring = cox_ring(6);
  json bad = json::array();
  for (const TableRow& row : t2.rows) {
    if (row.quarantined()) continue;
    const auto monos = row.parsed();
    if (monos.size() != 4) {
      bad.push_back(row.label + ": malformed row");
      continue;
    }
    const DivisorClass d = ring.pic_degree(monos.front());
    std::vector<std::string> why;
    if (intersect(d, d) != 1 || coarse_degree(d) != 3) why.push_back("degree is not of line type");
    const GradedPiece<S>& piece = pieces(d);
    if (piece.codimension() != 3) why.push_back("piece codimension " + std::to_string(piece.codimension()));
    if (section_rank(real, d) != 3) why.push_back("section rank is not 3");
    for (std::size_t skip = 0; skip < 4; ++skip) {
      std::vector<Monomial> three;
      for (std::size_t k = 0; k < 4; ++k) {
        if (k != skip) three.push_back(monos[k]);
      }
      if (supported_subspace(piece, three).rows() != 0) why.push_back("three monomials dependent modulo Q_6");
      if (forms_rank(real, three) != 3) why.push_back("three sections dependent");
    }
    const Matrix<S> sub = supported_subspace(piece, monos);
    if (sub.rows() != 1 || !full_support<S>(sub.row(0).transpose(), piece, monos)) {
      why.push_back("no all-nonzero dependency in Q_6");
    }
    if (forms_rank(real, monos) != 3) why.push_back("four sections not dependent");
    const auto terms = initial_terms(piece, ord);
    if (std::find(terms.begin(), terms.end(), monos.front()) == terms.end()) why.push_back("first monomial not initial");
    if (!why.empty()) {
      std::string s = row.label + ":";
      for (const auto& x : why) s += " " + x + ";";
      bad.push_back(s);
    }
  }
  return bad;
}

template <class S>
void run_m6a(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const auto configs = draw<S>(6, p, {.general_position = true, .no_eckart = true}, 3, rep);
  if (configs.empty()) return;
  const MonomialOrder ord = t.order(6);
  for (const Table* table : {&t.t1, &t.t2}) {
    for (const TableRow& row : table->rows) {
      if (row.quarantined()) {
        std::string s = table->name + " row " + row.label + " quarantined:";
        for (const auto& i : row.issues) s += " " + i + ";";
        rep.notes.push_back(s);
      }
    }
  }
  struct Outcome {
    json t1, t2, direct;
  };
  const MonomialIdeal m6 = t.initial_ideal(6);
  const auto outcomes = parallel_map<Outcome>(configs.size(), p.workers, [&](std::size_t i) {
    const auto real = realize(configs[i]);
    PieceCache<S> pieces(cox_ring(6), build_qr(real));
    Outcome o{t1_failures(real, pieces, t.t1, ord), t2_failures(real, pieces, t.t2, ord), json::array()};
    for (const Monomial& u : m6.generators()) {
      const auto terms = initial_terms(pieces(cox_ring(6).pic_degree(u)), ord);
      if (std::find(terms.begin(), terms.end(), u) == terms.end()) o.direct.push_back(cox_ring(6).format(u));
    }
    return o;
  });
  bool t1_ok = true;
  bool t2_ok = true;
  bool direct_ok = true;
  json w1 = json::array();
  json w2 = json::array();
  json wd = json::array();
  for (const Outcome& o : outcomes) {
    t1_ok = t1_ok && o.t1.empty();
    t2_ok = t2_ok && o.t2.empty();
    direct_ok = direct_ok && o.direct.empty();
    w1.push_back(o.t1);
    w2.push_back(o.t2);
    wd.push_back(o.direct);
  }
  rep.add("every generator of M_6 is an initial term of its Q_6 piece", direct_ok,
          std::to_string(m6.size()) + " generators", wd);
  const std::size_t quadratic = t.t1.rows.size() - t.t1.quarantined_count();
  const std::size_t cubic = t.t2.rows.size() - t.t2.quarantined_count();
  rep.add("quadratic rows: each lead monomial leads a relation with the last two", t1_ok,
          std::to_string(quadratic) + " rows", w1);
  rep.add("cubic rows: rank 3 piece, independent triples, all-nonzero dependency", t2_ok,
          std::to_string(cubic) + " rows", w2);
  cubic_generator_checks(configs, p, t, rep);
}

template <class S>
void run_cubicgenerator(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const auto configs = draw<S>(6, p, {.general_position = true, .no_eckart = true}, 3, rep);
  if (configs.empty()) return;
  cubic_generator_checks(configs, p, t, rep);
}

void run_m6b(const VerifyParams&, const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(6);
  const MonomialIdeal m = t.initial_ideal(6);
  rep.add("116 generators", m.size() == 116, std::to_string(m.size()));
  rep.add("generators omit g5", !involves(m, ring.index("g5")));
  const KPolynomial k = k_polynomial(ring, m);
  bool invariant = true;
  for (const WeylElement& g : weyl_group(6).generators()) invariant = invariant && act(g, k) == k;
  rep.add("K-polynomial invariant under the W_6 generators", invariant, std::to_string(k.size()) + " terms");
  const auto [bin_ok, values] = binomial_counts(ring, m, 4);
  rep.add("stable counts binom(m+2,2) for m <= 4", bin_ok, {}, values);
}

/// Degrees D with D^2 = 1 and -K.D = 3, by a coefficient box search.
std::vector<DivisorClass> line_type_degrees() {
  std::vector<DivisorClass> out;
  ClassVector v(7);
  std::function<void(int)> rec = [&](int k) {
    if (k == 7) {
      const DivisorClass d(v);
      if (intersect(d, d) == 1 && coarse_degree(d) == 3) out.push_back(d);
      return;
    }
    const int lo = k == 0 ? 0 : -3;
    const int hi = k == 0 ? 6 : 3;
    for (int x = lo; x <= hi; ++x) {
      v(k) = x;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

template <class S>
void run_relations(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(6);
  const WeylGroup& w6 = weyl_group(6);
  // One Weyl element carrying l to each line-type degree.
  std::map<DivisorClass, std::size_t> carrier;
  for (std::size_t i = 0; i < w6.order(); ++i) carrier.emplace(act(w6[i], DivisorClass::line(6)), i);
  const auto box = line_type_degrees();
  std::set<DivisorClass> box_set(box.begin(), box.end());
  std::set<DivisorClass> orbit_set;
  for (const auto& [d, i] : carrier) orbit_set.insert(d);
  rep.add("72 degrees with D^2 = 1, -K.D = 3, forming the orbit of l", box_set.size() == 72 && box_set == orbit_set,
          std::to_string(box_set.size()) + " by search, " + std::to_string(orbit_set.size()) + " in the orbit");
  const MonomialIdeal m6 = t.initial_ideal(6);
  json off = json::array();
  for (const DivisorClass& d : box) {
    if (hilbert_at(ring, m6, d) != 3) off.push_back(d.str());
  }
  rep.add("k[E_6]/M_6 has dimension 3 in each of these degrees", off.empty(), {}, off);

  // Both a general and an Eckart configuration: the statement covers every surface.
  std::vector<std::vector<PlanePoint<S>>> configs;
  if (p.points) {
    configs = draw<S>(6, p, {}, 1, rep);
  } else {
    configs.push_back(sample_points<S>(6, derive_seed(p.seed, 0), {.general_position = true, .no_eckart = true}));
    configs.push_back(sample_points<S>(6, derive_seed(p.seed, 1), {.general_position = true, .with_eckart = true}));
    rep.configuration["field"] = S::field_name();
    rep.configuration["seed"] = p.seed;
    rep.configuration["samples"] = json::array({points_json(configs[0]), points_json(configs[1])});
  }
  if (configs.empty()) return;

  auto idx = [&](const std::string& label) { return ring.index(label); };
  auto f_label = [](int a, int b) { return "f" + std::to_string(std::min(a, b)) + std::to_string(std::max(a, b)); };
  struct Outcome {
    json codim_bad = json::array(), reduction_bad = json::array(), span_bad = json::array();
  };
  const auto outcomes = parallel_map<Outcome>(configs.size(), p.workers, [&](std::size_t c) {
    Outcome o;
    const auto real = realize(configs[c]);
    PieceCache<S> pieces(ring, build_qr(real));
    for (const DivisorClass& d : box) {
      const WeylElement& g = w6[carrier.at(d)];
      const GradedPiece<S>& piece = pieces(d);
      const auto codim = piece.codimension();
      if (codim > 3 || codim != section_rank(real, d)) {
        o.codim_bad.push_back(d.str() + ": codimension " + std::to_string(codim));
      }
      auto image = [&](int v) { return static_cast<int>(g.curve_perm[static_cast<std::size_t>(v)]); };
      auto gvar = [&](int i) { return image(idx("e" + std::to_string(i))); };
      auto hvar = [&](int i, int j) { return image(idx(f_label(i, j))); };
      // h_ij g_j is tied to two sections with indices below 4 by a conic relation.
      for (int j = 4; j <= 6; ++j) {
        for (int i = 1; i < j; ++i) {
          std::vector<int> rs;
          for (int x = 1; x <= 3 && rs.size() < 2; ++x) {
            if (x != i) rs.push_back(x);
          }
          const std::vector<Monomial> support{Monomial::variable(hvar(i, j)) * Monomial::variable(gvar(j)),
                                              Monomial::variable(hvar(rs[0], i)) * Monomial::variable(gvar(rs[0])),
                                              Monomial::variable(hvar(rs[1], i)) * Monomial::variable(gvar(rs[1]))};
          if (!element_with_support(pieces(ring.pic_degree(support[0])), support)) {
            o.reduction_bad.push_back(d.str() + ": no relation for " + ring.format(support[0]));
          }
        }
      }
      // Direct: the piece plus the three low monomials spans the whole degree.
      const auto n = static_cast<Eigen::Index>(piece.monomials.size());
      Matrix<S> m = Matrix<S>::Zero(piece.basis.rows() + 3, n);
      if (piece.basis.rows() > 0) m.topRows(piece.basis.rows()) = piece.basis;
      int row = static_cast<int>(piece.basis.rows());
      for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        const Monomial u = Monomial::variable(hvar(i, j)) * Monomial::variable(gvar(i)) * Monomial::variable(gvar(j));
        const auto col = std::find(piece.monomials.begin(), piece.monomials.end(), u) - piece.monomials.begin();
        m(row++, col) = S(1);
      }
      if (rank<S>(m) != n) o.span_bad.push_back(d.str());
    }
    return o;
  });
  bool codim_ok = true, red_ok = true, span_ok = true;
  json wc = json::array(), wr = json::array(), ws = json::array();
  for (const Outcome& o : outcomes) {
    codim_ok = codim_ok && o.codim_bad.empty();
    red_ok = red_ok && o.reduction_bad.empty();
    span_ok = span_ok && o.span_bad.empty();
    wc.push_back(o.codim_bad);
    wr.push_back(o.reduction_bad);
    ws.push_back(o.span_bad);
  }
  rep.add("dim (k[E_6]/Q_6)_D <= 3, equal to the section rank", codim_ok, {}, wc);
  rep.add("reduction relations q with nonzero coefficients exist", red_ok, {}, wr);
  rep.add("h_ij g_i g_j (i < j <= 3) span each degree modulo Q_6", span_ok, {}, ws);
}

template <class S>
void run_ugly1(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(6);
  if (t.ugly1.rows.empty() || t.ugly1.rows.front().quarantined()) {
    rep.skip("five dependent -K monomials", "row missing or quarantined");
    return;
  }
  const auto ugly = t.ugly1.rows.front().parsed();
  std::vector<std::vector<PlanePoint<S>>> configs;
  if (p.points) {
    configs = draw<S>(6, p, {}, 1, rep);
  } else {
    configs.push_back(sample_points<S>(6, derive_seed(p.seed, 0), {.general_position = true, .no_eckart = true}));
    configs.push_back(sample_points<S>(6, derive_seed(p.seed, 1), {.general_position = true, .no_eckart = true}));
    configs.push_back(sample_points<S>(6, derive_seed(p.seed, 2), {.general_position = true, .with_eckart = true}));
    rep.configuration["field"] = S::field_name();
    rep.configuration["seed"] = p.seed;
    json samples = json::array();
    for (const auto& c : configs) samples.push_back(points_json(c));
    rep.configuration["samples"] = samples;
  }
  if (configs.empty()) return;
  auto mono = [&](const char* text) { return ring.parse_monomial(text); };
  struct Part {
    const char* factor;
    std::array<const char*, 3> support;
  };
  const std::array<Part, 3> parts{Part{"f12", {"f46*f35", "f34*f56", "g2*e1"}},
                                  Part{"f34", {"f12*f56", "f16*f25", "f26*f15"}},
                                  Part{"f46", {"f12*f35", "f13*f25", "f23*f15"}}};
  struct Outcome {
    bool relations = false, d1 = false, combination = false, subspace = false;
    std::string element;
  };
  const auto outcomes = parallel_map<Outcome>(configs.size(), p.workers, [&](std::size_t c) {
    Outcome o;
    PieceCache<S> pieces(ring, build_qr(configs[c]));
    std::vector<Polynomial<S>> rel;
    for (const Part& part : parts) {
      std::vector<Monomial> support;
      for (const char* s : part.support) support.push_back(mono(s));
      const auto f = element_with_support(pieces(ring.pic_degree(support[0])), support);
      if (!f) return o;
      rel.push_back(mono(part.factor) * *f);
    }
    o.relations = true;
    const S a1 = rel[0].coefficient(mono("f12*f46*f35"));
    const S c1 = rel[2].coefficient(mono("f12*f46*f35"));
    const Polynomial<S> s = rel[0] - (a1 / c1) * rel[2];
    const S d1 = s.coefficient(mono("f34*f12*f56"));
    o.d1 = !coxlab::is_zero(d1);
    if (!o.d1) return o;
    const S b1 = rel[1].coefficient(mono("f34*f12*f56"));
    const Polynomial<S> fin = s - (d1 / b1) * rel[1];
    bool inside = !fin.is_zero();
    for (const Monomial& u : fin.support()) inside = inside && std::find(ugly.begin(), ugly.end(), u) != ugly.end();
    o.combination = inside && pieces(anticanonical(6)).contains(fin);
    o.element = format(ring, fin);
    o.subspace = supported_subspace(pieces(anticanonical(6)), ugly).rows() >= 1;
    return o;
  });
  bool rel_ok = true, d1_ok = true, comb_ok = true, sub_ok = true;
  json w = json::array();
  for (const Outcome& o : outcomes) {
    rel_ok = rel_ok && o.relations;
    d1_ok = d1_ok && o.d1;
    comb_ok = comb_ok && o.combination;
    sub_ok = sub_ok && o.subspace;
    w.push_back(o.element);
  }
  rep.add("conic relations p1, p2, p3 with nonzero coefficients", rel_ok);
  rep.add("d1 != 0 after eliminating f12 f46 f35", d1_ok);
  rep.add("p1 - (a1/c1) p3 - (d1/b1) p2 is a nonzero element on the five monomials", comb_ok, {}, w);
  rep.add("Q_6 has a -K element supported on the five monomials", sub_ok);
}

void run_eckart(const VerifyParams& p, const ReferenceTables&, VerificationReport& rep) {
  using Q = Rational;
  const CoxRing& ring = cox_ring(6);
  const auto configs = draw<Q>(6, p, {.general_position = true, .with_eckart = true}, 1, rep);
  if (configs.empty()) return;
  const auto real = realize(configs.front());
  auto line = [&](const char* label) {
    const auto& c = real.forms[static_cast<std::size_t>(ring.index(label))].coeffs;
    return PlanePoint<Q>{c(0), c(1), c(2)};
  };
  if (!coxlab::is_zero(det3(line("f12"), line("f34"), line("f56")))) {
    rep.skip("concurrent lines", "the lines f12, f34, f56 are not concurrent at these points");
    return;
  }
  const auto witness = has_eckart_point(real);
  rep.add("configuration has an Eckart point", witness.has_value(), {},
          witness ? json(format_point(witness->point)) : json(nullptr));
  const std::vector<Monomial> before{ring.parse_monomial("f12*e1*e2"), ring.parse_monomial("f34*e3*e4"),
                                     ring.parse_monomial("f56*e5*e6")};
  const WeylElement swap = make_weyl_element(exceptional_curves(6), transposition_matrix(6, 2, 4));
  std::vector<Monomial> after;
  for (const Monomial& u : before) after.push_back(ring.act(swap, u));
  rep.add("f12e1e2, f34e3e4, f56e5e6 are dependent (section rank 2)", forms_rank(real, before) == 2);
  const auto pieces = pieces_of_realization(real);
  const auto relation = element_with_support(pieces(DivisorClass::line(6)), before);
  rep.add("the Cox ideal has a relation supported on them", relation.has_value(), {},
          relation ? json(format(ring, *relation)) : json(nullptr));
  rep.add("their images f14e1e4, f23e2e3, f56e5e6 are independent (section rank 3)", forms_rank(real, after) == 3, {},
          monomials_json(ring, after));
  if (relation) {
    const auto report = monomial_action_witness(ring, pieces, swap, *relation);
    rep.add("the transposition (2 4) has no monomial witness", !report.found(), {},
            json{{"support_rank", report.support_rank}});
  } else {
    rep.skip("the transposition (2 4) has no monomial witness", "no relation to move");
  }
}

template <class S>
bool gb_equals(const std::vector<PlanePoint<S>>& pts, const MonomialOrder& ord, const MonomialIdeal& m, json& w) {
  BuchbergerStats stats;
  const auto gb = buchberger(build_qr(pts), ord, &stats);
  w = json{{"field", S::field_name()},
           {"points", points_json(pts)},
           {"basis_size", gb.basis.size()},
           {"max_degree", gb.max_degree()},
           {"pairs", stats.pairs_considered}};
  return gb.initial() == m;
}

void run_bp(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  std::vector<int> ranks = p.r == 0 ? std::vector<int>{4, 5, 6} : std::vector<int>{p.r};
  rep.configuration["seed"] = p.seed;
  rep.configuration["field"] = p.field;
  for (int r : ranks) {
    if (r < 4 || r > 6) throw std::invalid_argument("bp-conjecture covers r = 4, 5, 6");
    const CoxRing& ring = cox_ring(r);
    const MonomialIdeal m = t.initial_ideal(r);
    const MonomialOrder ord = t.order(r);
    const std::string tag = "r=" + std::to_string(r) + ": ";
    const std::size_t first = rep.checks.size();
    std::uint32_t used = 0;
    for (const Monomial& u : m.generators()) used |= u.support_mask();
    rep.add(tag + "M_r omits a variable", std::popcount(used) < ring.num_variables());
    rep.add(tag + "Hilbert series invariant", hs_invariant(ring, m, weyl_group(r).generators()));
    const auto [bin_ok, values] = binomial_counts(ring, m, 4);
    rep.add(tag + "stable counts binom(m+2,2) for m <= 4", bin_ok, {}, values);
    json w;
    if (r == 4) {
      rep.add(tag + "in(Q_4) = M_4 at the standard points", gb_equals(standard_points<Rational>(), ord, m, w), {}, w);
    } else if (r == 5) {
      bool ok = false;
      with_field(p.field, "QQ", [&]<class S>() {
        ok = gb_equals(sample_points<S>(5, derive_seed(p.seed, 5), {}), ord, m, w);
      });
      rep.add(tag + "in(Q_5) = M_5 at a random configuration", ok, {}, w);
    } else {
      const SampleConstraints c{.general_position = true, .no_eckart = true};
      if (p.field == "auto") {
        json w1, w2;
        const bool a = gb_equals(sample_points<Fp32003>(6, derive_seed(p.seed, 6), c), ord, m, w1);
        const bool b = gb_equals(sample_points<Fp65521>(6, derive_seed(p.seed, 7), c), ord, m, w2);
        rep.add(tag + "in(Q_6) = M_6 over two prime fields", a && b, {}, json::array({w1, w2}));
      } else {
        bool ok = false;
        with_field(p.field, "QQ", [&]<class S>() { ok = gb_equals(sample_points<S>(6, derive_seed(p.seed, 6), c), ord, m, w); });
        rep.add(tag + "in(Q_6) = M_6 over " + p.field, ok, {}, w);
      }
    }
    bool all = true;
    for (std::size_t i = first; i < rep.checks.size(); ++i) all = all && rep.checks[i].status == CheckStatus::pass;
    rep.add(tag + "conditions hold, so C_r = Q_r on the sampled family", all,
            "initial ideals of Q_r and C_r agree once M_r is an invariant initial ideal of Q_r");
  }
}

void run_quadratic_search(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const QuadraticSearch s = quadratic_search(5, p.seed, p.workers, t);
  rep.configuration["seed"] = p.seed;
  rep.configuration["field"] = "QQ";
  rep.configuration["samples"] = json::array({points_json(s.points)});
  rep.add("exactly 18 realizable orbit classes", s.realized_count() == 18,
          std::to_string(s.realized_count()) + " of " + std::to_string(s.classes.size()) + " classes");
  rep.add("the tabulated initial ideal's class is realized", s.reference_class && s.classes[*s.reference_class].realized);
  std::set<std::size_t> distinct;
  bool rows_ok = !s.table_row_class.empty();
  for (std::size_t i = 0; i < s.table_row_class.size(); ++i) {
    rows_ok = rows_ok && s.table_row_class[i] && s.table_row_realized[i] && s.classes[*s.table_row_class[i]].realized;
    if (s.table_row_class[i]) distinct.insert(*s.table_row_class[i]);
  }
  rep.add("each weight row realizes its own class", rows_ok && distinct.size() == s.table_row_class.size(),
          std::to_string(distinct.size()) + " distinct classes");
  bool certified = true;
  for (const auto& c : s.classes) certified = certified && c.weights.verified;
  rep.add("every LP answer carries a verified witness", certified);
  for (const auto& c : s.classes) {
    if (c.realized && !c.filter.omits_variable) {
      rep.notes.push_back("a realized class involves every variable; the omitted-variable filter is not applied");
      break;
    }
  }
}

void run_small_candidates(const VerifyParams& p, const ReferenceTables& t, VerificationReport& rep) {
  const CoxRing& ring = cox_ring(6);
  const CurveGraph g = build_graph(6);
  rep.configuration["seed"] = p.seed;
  int triangles = 0;
  bool dichotomy = true;
  std::vector<std::array<int, 3>> open;
  for (int a = 0; a < 27; ++a) {
    for (int b = a + 1; b < 27; ++b) {
      for (int c = b + 1; c < 27; ++c) {
        const std::array<int, 3> tri{a, b, c};
        const bool is_tri = is_triangle(g, tri);
        const auto w = config_witness(g, tri);
        triangles += is_tri;
        dichotomy = dichotomy && (w.has_value() != is_tri) && (!w || check_config_witness(g, tri, *w));
        if (!is_tri) open.push_back(tri);
      }
    }
  }
  rep.add("configurations exist exactly for the 2880 non-triangle triples", dichotomy && triangles == 45,
          std::to_string(triangles) + " triangles");
  const int codim_q = codimension(ring, t.initial_ideal(6));
  rep.add("codimension of in(Q_6) is 18", codim_q == 18, std::to_string(codim_q));

  std::mt19937_64 rng(derive_seed(p.seed, 9));
  const int n = p.samples > 0 ? p.samples : 12;
  bool certified = true;
  json w = json::array();
  for (int k = 0; k < n; ++k) {
    const auto& tri = k == 0 ? std::array<int, 3>{ring.index("f23"), ring.index("f24"), ring.index("f25")}
                             : open[rng() % open.size()];
    const std::uint32_t avoid = 1u << tri[0] | 1u << tri[1] | 1u << tri[2];
    EdgeSet edges;
    for (const auto& ce : g.color_edges) {
      std::vector<int> ok;
      for (int e : ce) {
        const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
        if (!(avoid >> u & 1u) && !(avoid >> v & 1u)) ok.push_back(e);
      }
      std::shuffle(ok.begin(), ok.end(), rng);
      for (std::size_t i = 0; i < std::min<std::size_t>(3, ok.size()); ++i) edges.push_back(ok[i]);
    }
    std::sort(edges.begin(), edges.end());
    const ObstructionVerdict v = small_candidate_obstruction(g, edges, tri);
    const int codim = codimension(ring, edge_ideal(g, edges));
    const bool ok = v.independent.size() == 10 && v.codimension_bound == 17 && codim <= v.codimension_bound;
    certified = certified && ok;
    w.push_back({{"omitted", json::array({ring.name(tri[0]), ring.name(tri[1]), ring.name(tri[2])})},
                 {"independent", [&] {
                    json names = json::array();
                    for (int x : v.independent) names.push_back(ring.name(x));
                    return names;
                  }()},
                 {"codimension", codim}});
  }
  rep.add("sampled small candidates have a 10-vertex independent set, codim <= 17 < 18", certified,
          std::to_string(n) + " candidates", w);
}

using Runner = std::function<void(const VerifyParams&, const ReferenceTables&, VerificationReport&)>;

template <template <class> class>
struct Tag {};

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"M4", [](const VerifyParams& p, const ReferenceTables& t, VerificationReport& r) {
         with_field(p.field, "QQ", [&]<class S>() { run_m4<S>(p, t, r); });
       }},
      {"M5a", [](const VerifyParams& p, const ReferenceTables& t, VerificationReport& r) {
         with_field(p.field, "QQ", [&]<class S>() { run_m5a<S>(p, t, r); });
       }},
      {"M5b", run_m5b},
      {"M6a", [](const VerifyParams& p, const ReferenceTables& t, VerificationReport& r) {
         with_field(p.field, "QQ", [&]<class S>() { run_m6a<S>(p, t, r); });
       }},
      {"M6b", run_m6b},
      {"relations", [](const VerifyParams& p, const ReferenceTables& t, VerificationReport& r) {
         with_field(p.field, "QQ", [&]<class S>() { run_relations<S>(p, t, r); });
       }},
      {"ugly1", [](const VerifyParams& p, const ReferenceTables& t, VerificationReport& r) {
         with_field(p.field, "QQ", [&]<class S>() { run_ugly1<S>(p, t, r); });
       }},
      {"cubicgenerator", [](const VerifyParams& p, const ReferenceTables& t, VerificationReport& r) {
         with_field(p.field, "QQ", [&]<class S>() { run_cubicgenerator<S>(p, t, r); });
       }},
      {"eckart-counterexample", run_eckart},
      {"bp-conjecture", run_bp},
      {"quadratic-search", run_quadratic_search},
      {"small-candidates", run_small_candidates},
  };
  return table;
}

}  // namespace

M5Sets m5_sets(M5Reading reading) {
  M5Sets s;
  const auto conics = enumerate_conics(5);
  s.c.insert(conics.begin(), conics.end());
  for (const DivisorClass& c : conics) {
    for (const Curve& v : exceptional_curves(5)) {
      if (intersect(c, v.cls) != 1) continue;
      s.d.insert(c + v.cls);
      s.f.insert(2 * c + v.cls);
    }
  }
  for (const DivisorClass& a : conics) {
    for (const DivisorClass& b : conics) {
      if (intersect(a, b) == 2) s.h.insert(2 * a + b);
    }
  }
  if (reading == M5Reading::printed) {
    for (const DivisorClass& a : conics) {
      for (const DivisorClass& b : conics) {
        if (intersect(a, b) != 2) continue;
        s.g.insert(a + b);
        for (const DivisorClass& c : conics) {
          if (intersect(a, c) == 2 && intersect(b, c) == 2) s.j.insert(a + b + c);
        }
      }
    }
    return s;
  }
  for (const DivisorClass& c : conics) {
    for (const DivisorClass& d : s.d) {
      if (intersect(c, d) == 2) s.g.insert(c + d);
    }
  }
  for (std::size_t a = 0; a < conics.size(); ++a) {
    for (std::size_t b = a + 1; b < conics.size(); ++b) {
      for (std::size_t c = b + 1; c < conics.size(); ++c) {
        if (intersect(conics[a], conics[b]) == 1 && intersect(conics[a], conics[c]) == 1 &&
            intersect(conics[b], conics[c]) == 1) {
          s.j.insert(conics[a] + conics[b] + conics[c]);
        }
      }
    }
  }
  s.j_coefficient = 2;
  return s;
}

KPolynomial m5_closed_form(const M5Sets& s) {
  const DivisorClass mk = anticanonical(5);
  KPolynomial alpha;
  alpha[DivisorClass::zero(5)] += 1;
  for (const auto& x : s.c) {
    alpha[x] -= 2;
    alpha[2 * x] += 1;
  }
  for (const auto& x : s.d) alpha[x] += 3;
  for (const auto& x : s.f) alpha[x] -= 1;
  alpha[mk] -= 3;
  for (const auto& x : s.g) alpha[x] -= 6;
  KPolynomial out = alpha;
  for (const auto& [deg, coeff] : alpha) out[3 * mk - deg] += coeff;  // (t^A)* = t^(-3K-A)
  for (const auto& x : s.j) out[x] += s.j_coefficient;
  for (const auto& x : s.h) out[x] += 12;
  return strip(out);
}

std::vector<std::string> verifier_ids() {
  return {"M4",    "M5a",           "M5b",           "M6a",          "M6b",
          "relations", "ugly1",     "cubicgenerator", "eckart-counterexample", "bp-conjecture",
          "quadratic-search", "small-candidates"};
}

VerificationReport verify(std::string_view lemma, const VerifyParams& params) {
  const auto it = runners().find(std::string(lemma));
  if (it == runners().end()) throw std::invalid_argument("unknown verifier '" + std::string(lemma) + "'");
  VerificationReport rep;
  rep.lemma = std::string(lemma);
  const ReferenceTables& tables = params.tables ? *params.tables : reference_tables();
  try {
    it->second(params, tables, rep);
  } catch (const SamplingError& e) {
    rep.skip("sampling", e.what());
  }
  return rep;
}

// ---------------------------------------------------------------------------------
// Quadratic initial ideal search

std::size_t QuadraticSearch::realized_count() const {
  return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(), [](const QuadraticClass& c) { return c.realized; }));
}

QuadraticSearch quadratic_search(int r, std::uint64_t seed, int workers, const ReferenceTables& tables) {
  if (r != 4 && r != 5) throw std::invalid_argument("the exhaustive search covers r = 4 and 5");
  QuadraticSearch out;
  out.r = r;
  out.points = r == 4 ? standard_points<Rational>() : sample_points<Rational>(r, derive_seed(seed, 0), {});
  const auto real = realize(out.points);
  const CurveGraph g = build_graph(r);
  const auto targets =
      hilbert_targets(g, [&](const DivisorClass& d) { return static_cast<std::int64_t>(section_rank(real, d)); }, 4);
  out.targets = targets.size();
  const SearchResult res = search_selections(g, targets, workers);
  out.nodes = res.nodes;
  out.leaves = res.selections.size();
  const auto perms = edge_permutations(g, weyl_group(r).elements());
  const auto reps = orbit_classes(res.selections, perms);
  const auto gens = build_qr(out.points);
  out.classes = parallel_map<QuadraticClass>(reps.size(), workers, [&](std::size_t i) {
    QuadraticClass c;
    c.representative = reps[i];
    std::set<EdgeSet> orbit;
    for (const auto& perm : perms) orbit.insert(act_on_edges(perm, reps[i]));
    c.orbit_size = orbit.size();
    c.filter = filter_candidate(g, reps[i]);
    if (c.filter.invariants_hold()) {
      c.weights = selection_weights(g, reps[i]);
      if (c.weights.feasible) c.realized = realize_by_weight(g, reps[i], c.weights.weights, gens).realized;
    }
    return c;
  });
  auto class_of = [&](const EdgeSet& s) -> std::optional<std::size_t> {
    const EdgeSet canon = canonical_form(s, perms);
    const auto it = std::lower_bound(reps.begin(), reps.end(), canon);
    if (it == reps.end() || *it != canon) return std::nullopt;
    return static_cast<std::size_t>(it - reps.begin());
  };
  if (const auto ref = edges_of(g, tables.initial_ideal(r))) out.reference_class = class_of(*ref);
  if (r == 5) {
    const auto canonical = MonomialOrder::canonical(g.num_vertices).sequence();
    for (std::size_t row = 0; row < tables.t4.size(); ++row) {
      const auto w = tables.t4_weights(row);
      const EdgeSet q = quadratic_part(g, MonomialOrder::weighted(w, canonical));
      const auto cls = class_of(q);
      out.table_row_class.push_back(cls);
      if (cls) out.classes[*cls].table_rows.push_back(row);
      out.table_row_realized.push_back(realize_by_weight(g, q, w, gens).realized);
    }
  }
  return out;
}

json to_json(const QuadraticSearch& s) {
  const CoxRing& ring = cox_ring(s.r);
  const CurveGraph g = build_graph(s.r);
  json classes = json::array();
  for (const QuadraticClass& c : s.classes) {
    json edges = json::array();
    for (int e : c.representative) edges.push_back(ring.format(g.edge_monomial(e)));
    json j{{"edges", edges},
           {"orbit_size", c.orbit_size},
           {"hs_invariant", c.filter.hs_invariant},
           {"binomial_counts", c.filter.binomial_counts},
           {"omits_variable", c.filter.omits_variable},
           {"weight_feasible", c.weights.feasible},
           {"witness_verified", c.weights.verified},
           {"realized", c.realized},
           {"table_rows", c.table_rows}};
    if (c.weights.feasible) j["weights"] = c.weights.weights;
    if (!c.weights.feasible && c.weights.certificate.size() > 0) {
      json cert = json::array();
      for (Eigen::Index i = 0; i < c.weights.certificate.size(); ++i) cert.push_back(c.weights.certificate(i).str());
      j["farkas_certificate"] = cert;
    }
    classes.push_back(std::move(j));
  }
  json rows = json::array();
  for (std::size_t i = 0; i < s.table_row_class.size(); ++i) {
    rows.push_back({{"row", i},
                    {"class", s.table_row_class[i] ? json(*s.table_row_class[i]) : json(nullptr)},
                    {"realized", s.table_row_realized[i]}});
  }
  return json{{"schema", report_schema},
              {"r", s.r},
              {"points", points_json(s.points)},
              {"hilbert_targets", s.targets},
              {"search_nodes", s.nodes},
              {"leaves", s.leaves},
              {"classes", classes},
              {"realized", s.realized_count()},
              {"reference_class", s.reference_class ? json(*s.reference_class) : json(nullptr)},
              {"table_rows", rows}};
}

}  // namespace coxlab
