#pragma once

// Point sampling, the verification harness for the initial-ideal arguments, and the
// driver of the quadratic initial ideal search.

#include "coxlab/curvegraph.hpp"
#include "coxlab/geometry.hpp"
#include "coxlab/tables.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace coxlab {

struct SampleConstraints {
  bool general_position = true;
  bool no_eckart = false;
  bool with_eckart = false;  // r = 6: the lines p1p2, p3p4, p5p6 are concurrent
};

struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// [1:0:0], [0:1:0], [0:0:1], [1:1:1].
template <class S>
std::vector<PlanePoint<S>> standard_points() {
  return {{S(1), S(0), S(0)}, {S(0), S(1), S(0)}, {S(0), S(0), S(1)}, {S(1), S(1), S(1)}};
}

/// Rejection sampling with small integer coordinates; throws SamplingError when the
/// budget runs out.
template <class S>
std::vector<PlanePoint<S>> sample_points(int r, std::uint64_t seed, SampleConstraints c, int budget = 20000) {
  check_point_count(r);
  if (c.with_eckart && c.no_eckart) throw std::invalid_argument("with_eckart and no_eckart exclude each other");
  if (c.with_eckart && r != 6) throw std::invalid_argument("Eckart configurations are sampled for r = 6 only");
  std::mt19937_64 rng(seed);
  const auto small = [&](long span) { return static_cast<long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span; };
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<PlanePoint<S>> pts;
    if (c.with_eckart) {
      const long cx = small(12), cy = small(12);
      for (int k = 0; k < 3; ++k) {
        const long dx = small(4), dy = small(4);
        const long s = small(5), t = small(5);
        for (long u : {s, t}) pts.push_back({S(cx + u * dx), S(cy + u * dy), S(1)});
      }
    } else {
      for (int i = 0; i < r; ++i) pts.push_back({S(small(30)), S(small(30)), S(1)});
    }
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = pts[i] != pts[j];
    }
    if (!ok) continue;
    const bool need_gp = c.general_position || c.no_eckart || c.with_eckart;
    if (need_gp && !check_general_position(pts).ok) continue;
    if (c.no_eckart || c.with_eckart) {
      const bool eckart = has_eckart_point(realize(pts)).has_value();
      if (eckart != c.with_eckart) continue;
    }
    return pts;
  }
  throw SamplingError("no admissible configuration within the sampling budget");
}

template <class S>
std::string format_point(const PlanePoint<S>& p) {
  return "[" + p[0].str() + ":" + p[1].str() + ":" + p[2].str() + "]";
}

/// A JSON list of [x, y, z] triples; entries are integers or "n/d" strings.
std::vector<PlanePoint<Rational>> parse_points(const nlohmann::json& j);

enum class CheckStatus { pass, fail, skip };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
  nlohmann::json witness;
};

inline constexpr const char* report_schema = "coxlab.report/1";

struct VerificationReport {
  std::string lemma;
  nlohmann::json configuration = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;  // quarantined rows and other context

  void add(std::string name, bool ok, std::string detail = {}, nlohmann::json witness = nullptr);
  void skip(std::string name, std::string reason);
  /// Every check ran and passed.
  bool passed() const;
  nlohmann::json to_json() const;
  std::string summary() const;
};

struct VerifyParams {
  std::uint64_t seed = 1;
  std::string field = "auto";  // auto, QQ, 32003, 65521
  int samples = 0;             // 0: the verifier's default
  int workers = 1;
  int r = 0;                   // bp-conjecture: 0 runs r = 4, 5, 6
  std::optional<std::vector<PlanePoint<Rational>>> points;
  const ReferenceTables* tables = nullptr;  // defaults to the embedded tables
};

/// Divisor sets of the closed form of the K-polynomial of M_5. The printed reading
/// takes G and J from conics meeting twice, which for r = 5 gives G = {-K} and J empty;
/// the corrected reading has G = {c + d : c in C, d in D, c.d = 2} = {-K + v} and J the
/// sums of three conics meeting pairwise once.
enum class M5Reading { printed, corrected };

struct M5Sets {
  std::set<DivisorClass> c, d, f, g, h, j;
  int j_coefficient = 1;  // 2 in the corrected reading
};

M5Sets m5_sets(M5Reading reading);
/// (alpha + alpha*) + j_coefficient t^J + 12 t^H, zero terms dropped.
KPolynomial m5_closed_form(const M5Sets& s);

std::vector<std::string> verifier_ids();
/// Throws std::invalid_argument for unknown ids.
VerificationReport verify(std::string_view lemma, const VerifyParams& params = {});

/// Orbit class of the quadratic initial ideal search.
struct QuadraticClass {
  EdgeSet representative;
  std::size_t orbit_size = 0;
  FilterReport filter;
  WeightFeasibility weights;
  bool realized = false;        // Buchberger under the LP weight gives the edge ideal
  std::vector<std::size_t> table_rows;  // T4 rows whose weights land in this class
};

struct QuadraticSearch {
  int r = 0;
  std::vector<PlanePoint<Rational>> points;
  std::size_t targets = 0;
  std::uint64_t nodes = 0;
  std::size_t leaves = 0;
  std::vector<QuadraticClass> classes;
  std::optional<std::size_t> reference_class;  // class of the tabulated initial ideal
  std::vector<std::optional<std::size_t>> table_row_class;
  std::vector<bool> table_row_realized;  // Buchberger under the row's own weights

  std::size_t realized_count() const;
};

/// Pruned search, orbit reduction, invariant filter, LP and Buchberger for r = 4 or 5.
QuadraticSearch quadratic_search(int r, std::uint64_t seed, int workers, const ReferenceTables& tables);
nlohmann::json to_json(const QuadraticSearch& s);

}  // namespace coxlab
