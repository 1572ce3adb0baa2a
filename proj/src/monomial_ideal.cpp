#include "coxlab/monomial_ideal.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace coxlab {

namespace {

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    const int da = a.degree(), db = b.degree();
    return da != db ? da < db : a > b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Monomial> out;
  for (const Monomial& g : gens) {
    bool redundant = false;
    for (const Monomial& h : out) {
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.push_back(g);
  }
  return out;
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::vector<Monomial> gens) : gens_(minimalize(std::move(gens))) {
  std::sort(gens_.begin(), gens_.end(), std::greater<>());
}

bool MonomialIdeal::contains(const Monomial& m) const {
  return std::any_of(gens_.begin(), gens_.end(), [&](const Monomial& g) { return g.divides(m); });
}

bool MonomialIdeal::is_squarefree() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Monomial& g) { return g.is_squarefree(); });
}

int MonomialIdeal::max_degree() const {
  int d = 0;
  for (const Monomial& g : gens_) d = std::max(d, g.degree());
  return d;
}

std::uint32_t MonomialIdeal::support_mask() const {
  std::uint32_t mask = 0;
  for (const Monomial& g : gens_) mask |= g.support_mask();
  return mask;
}

MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b) {
  std::vector<Monomial> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return MonomialIdeal(std::move(gens));
}

bool monomial_membership(const MonomialIdeal& m, const Monomial& u) { return m.contains(u); }

MonomialIdeal colon_saturate(const MonomialIdeal& m, const std::vector<int>& vars) {
  std::vector<Monomial> gens = m.generators();
  for (Monomial& g : gens) {
    for (int v : vars) g.set(v, 0);
  }
  return MonomialIdeal(std::move(gens));
}

MonomialIdeal colon(const MonomialIdeal& m, const Monomial& u) {
  std::vector<Monomial> gens;
  for (const Monomial& g : m.generators()) {
    Monomial q;
    for (int v = 0; v < kMaxVariables; ++v) q.set(v, std::max(0, g[v] - u[v]));
    gens.push_back(q);
  }
  return MonomialIdeal(std::move(gens));
}

MonomialIdeal act(const CoxRing& ring, const WeylElement& g, const MonomialIdeal& m) {
  std::vector<Monomial> gens;
  for (const Monomial& u : m.generators()) gens.push_back(ring.act(g, u));
  return MonomialIdeal(std::move(gens));
}

std::int64_t hilbert_at(const CoxRing& ring, const MonomialIdeal& m, const DivisorClass& d) {
  std::int64_t count = 0;
  for (const Monomial& u : ring.enumerate_monomials(d)) {
    if (!m.contains(u)) ++count;
  }
  return count;
}

StableCount stable_count(const CoxRing& ring, const MonomialIdeal& m, int line_degree) {
  if (line_degree < 0) throw std::invalid_argument("stable_count needs m >= 0");
  const std::vector<int> evars = ring.e_variables();
  const MonomialIdeal sat = colon_saturate(m, evars);
  int max_e = 0;
  for (const Monomial& g : m.generators()) {
    for (int v : evars) max_e = std::max(max_e, g[v]);
  }
  const int base = max_e + line_degree + 1;
  StableCount out;
  for (int a : {base, base + 3}) {
    ClassVector v = ClassVector::Constant(ring.r() + 1, a);
    v(0) = line_degree;
    const DivisorClass d(v);
    out.probes.push_back(d);
    out.saturated_values.push_back(hilbert_at(ring, sat, d));
    out.ideal_values.push_back(hilbert_at(ring, m, d));
  }
  out.value = out.saturated_values.front();
  out.stable = true;
  for (std::size_t k = 0; k < out.probes.size(); ++k) {
    out.stable = out.stable && out.saturated_values[k] == out.value && out.ideal_values[k] == out.value;
  }
  return out;
}

namespace {

// Pic degrees packed as sum_k d_k 256^k; linear, so shifting a polynomial by t^a adds
// the packed value of a.
using Packed = std::int64_t;
using Laurent = std::vector<std::pair<Packed, std::int64_t>>;  // sorted by key, no zeros

Packed pack(const DivisorClass& d) {
  Packed p = 0;
  for (int k = d.r(); k >= 0; --k) p = p * 256 + d[k];
  return p;
}

DivisorClass unpack(Packed p, int r) {
  ClassVector v(r + 1);
  for (int k = 0; k <= r; ++k) {
    Packed rem = p % 256;
    if (rem > 127) rem -= 256;
    if (rem < -128) rem += 256;
    v(k) = static_cast<int>(rem);
    p = (p - rem) / 256;
  }
  return DivisorClass(v);
}

Laurent normalize(std::vector<std::pair<Packed, std::int64_t>> terms) {
  std::sort(terms.begin(), terms.end());
  Laurent out;
  for (const auto& [k, c] : terms) {
    if (!out.empty() && out.back().first == k) {
      out.back().second += c;
    } else {
      if (!out.empty() && out.back().second == 0) out.pop_back();
      out.emplace_back(k, c);
    }
  }
  if (!out.empty() && out.back().second == 0) out.pop_back();
  return out;
}

Laurent multiply(const Laurent& a, const Laurent& b) {
  std::vector<std::pair<Packed, std::int64_t>> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) terms.emplace_back(ka + kb, ca * cb);
  }
  return normalize(std::move(terms));
}

// (1 - t^s) * a + t^s * b
Laurent combine_pivot(const Laurent& a, const Laurent& b, Packed s) {
  std::vector<std::pair<Packed, std::int64_t>> terms(a.begin(), a.end());
  for (const auto& [k, c] : a) terms.emplace_back(k + s, -c);
  for (const auto& [k, c] : b) terms.emplace_back(k + s, c);
  return normalize(std::move(terms));
}

struct GensHash {
  std::size_t operator()(const std::vector<Monomial>& gens) const {
    std::size_t h = gens.size();
    MonomialHash mh;
    for (const Monomial& g : gens) h = h * 1000003u ^ mh(g);
    return h;
  }
};

class KPolyEngine {
 public:
  explicit KPolyEngine(const CoxRing& ring) : n_(ring.num_variables()) {
    for (int v = 0; v < n_; ++v) var_key_.push_back(pack(ring.variable_degree(v)));
  }

  Laurent run(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end());
    return compute(gens);
  }

 private:
  Packed degree_key(const Monomial& m) const {
    Packed p = 0;
    for (int v = 0; v < n_; ++v) p += m[v] * var_key_[static_cast<std::size_t>(v)];
    return p;
  }

  // gens: minimal, sorted ascending in storage order.
  Laurent compute(const std::vector<Monomial>& gens) {
    if (gens.empty()) return {{0, 1}};
    for (const Monomial& g : gens) {
      if (g.is_one()) return {};
    }
    if (gens.size() == 1) return {{0, 1}, {degree_key(gens[0]), -1}};
    if (auto it = memo_.find(gens); it != memo_.end()) return it->second;

    Laurent result;
    std::vector<std::vector<Monomial>> parts = components(gens);
    if (parts.size() > 1) {
      result = {{0, 1}};
      for (auto& part : parts) result = multiply(result, compute(part));
    } else {
      std::vector<int> freq(static_cast<std::size_t>(n_), 0);
      for (const Monomial& g : gens) {
        for (int v = 0; v < n_; ++v) freq[static_cast<std::size_t>(v)] += g[v] > 0;
      }
      const int pivot = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin());
      std::vector<Monomial> without, quotient;
      for (const Monomial& g : gens) {
        if (g[pivot] == 0) {
          without.push_back(g);
          quotient.push_back(g);
        } else {
          Monomial q = g;
          q.set(pivot, g[pivot] - 1);
          quotient.push_back(q);
        }
      }
      std::vector<Monomial> q = minimalize(std::move(quotient));
      std::sort(q.begin(), q.end());
      // K(M) = (1 - t^x) K(gens without x) + t^x K(M : x)
      result = combine_pivot(compute(without), compute(q), var_key_[static_cast<std::size_t>(pivot)]);
    }
    if (memo_.size() > 4'000'000) memo_.clear();
    memo_.emplace(gens, result);
    return result;
  }

  std::vector<std::vector<Monomial>> components(const std::vector<Monomial>& gens) const {
    std::vector<std::uint32_t> masks;
    for (const Monomial& g : gens) masks.push_back(g.support_mask());
    std::vector<int> comp(gens.size(), -1);
    int count = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (comp[i] >= 0) continue;
      std::uint32_t mask = masks[i];
      comp[i] = count;
      bool grew = true;
      while (grew) {
        grew = false;
        for (std::size_t j = 0; j < gens.size(); ++j) {
          if (comp[j] < 0 && (masks[j] & mask) != 0) {
            comp[j] = count;
            mask |= masks[j];
            grew = true;
          }
        }
      }
      ++count;
    }
    std::vector<std::vector<Monomial>> parts(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < gens.size(); ++i) parts[static_cast<std::size_t>(comp[i])].push_back(gens[i]);
    return parts;
  }

  int n_;
  std::vector<Packed> var_key_;
  std::unordered_map<std::vector<Monomial>, Laurent, GensHash> memo_;
};

}  // namespace

KPolynomial k_polynomial(const CoxRing& ring, const MonomialIdeal& m) {
  KPolyEngine engine(ring);
  KPolynomial out;
  for (const auto& [k, c] : engine.run(m.generators())) out.emplace(unpack(k, ring.r()), c);
  return out;
}

KPolynomial act(const WeylElement& g, const KPolynomial& k) {
  KPolynomial out;
  for (const auto& [d, c] : k) out[act(g, d)] += c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::string format_kpolynomial(const KPolynomial& k) {
  if (k.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [d, c] : k) {
    const bool neg = c < 0;
    const std::int64_t a = neg ? -c : c;
    out << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const bool unit = d == DivisorClass::zero(d.r());
    if (unit) {
      out << a;
    } else {
      if (a != 1) out << a << "*";
      out << "t^(" << d.str() << ")";
    }
  }
  return out.str();
}

std::int64_t hilbert_from_k_polynomial(const CoxRing& ring, const KPolynomial& k, const DivisorClass& d) {
  std::int64_t sum = 0;
  for (const auto& [e, c] : k) sum += c * static_cast<std::int64_t>(ring.enumerate_monomials(d - e).size());
  return sum;
}

std::uint32_t max_independent_set(int num_variables, const MonomialIdeal& m) {
  if (!m.is_squarefree()) throw std::invalid_argument("codimension needs a squarefree monomial ideal");
  const std::uint32_t all = num_variables >= 32 ? ~0u : ((1u << num_variables) - 1);
  std::vector<std::uint32_t> edges;
  for (const Monomial& g : m.generators()) edges.push_back(g.support_mask());
  if (std::any_of(edges.begin(), edges.end(), [](auto e) { return e == 0; })) return 0;
  // Minimum hitting set by branch and bound; the complement is a maximum independent set.
  int best = std::popcount(all) + 1;
  std::uint32_t best_set = all;
  auto lower_bound = [&](std::uint32_t hit, std::uint32_t forbidden) {
    // Greedy packing of pairwise disjoint unhit edges.
    std::uint32_t used = 0;
    int count = 0;
    for (std::uint32_t e : edges) {
      if ((e & hit) == 0 && (e & ~forbidden & used) == 0) {
        used |= e & ~forbidden;
        ++count;
      }
    }
    return count;
  };
  auto rec = [&](auto&& self, std::uint32_t hit, std::uint32_t forbidden) -> void {
    const int size = std::popcount(hit);
    if (size >= best) return;
    std::uint32_t pick = 0;
    int pick_width = 64;
    for (std::uint32_t e : edges) {
      if ((e & hit) != 0) continue;
      const std::uint32_t open = e & ~forbidden;
      if (open == 0) return;  // cannot be hit any more
      const int width = std::popcount(open);
      if (width < pick_width) {
        pick = open;
        pick_width = width;
      }
    }
    if (pick == 0) {
      best = size;
      best_set = hit;
      return;
    }
    if (size + lower_bound(hit, forbidden) >= best) return;
    std::uint32_t tried = 0;
    for (std::uint32_t rest = pick; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      self(self, hit | bit, forbidden | tried);
      tried |= bit;
    }
  };
  rec(rec, 0u, 0u);
  return all & ~best_set;
}

int codimension(const CoxRing& ring, const MonomialIdeal& m) {
  const int n = ring.num_variables();
  return n - std::popcount(max_independent_set(n, m));
}

MonomialIdeal parse_monomial_ideal(const CoxRing& ring, std::string_view text) {
  std::vector<Monomial> gens;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    const auto j = nlohmann::json::parse(text);
    for (const auto& item : j) gens.push_back(ring.parse_monomial(item.get<std::string>()));
    return MonomialIdeal(std::move(gens));
  }
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string s;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) continue;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!item.empty()) gens.push_back(ring.parse_monomial(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return MonomialIdeal(std::move(gens));
}

std::string format(const CoxRing& ring, const MonomialIdeal& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) out += ", ";
    out += ring.format(m.generators()[i]);
  }
  return out + ")";
}

}  // namespace coxlab
