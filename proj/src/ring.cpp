#include "coxlab/ring.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace coxlab {

CoxRing::CoxRing(int r) : curves_(enumerate_exceptional(r)) {
  if (curves_.size() > static_cast<std::size_t>(kMaxVariables)) {
    throw std::logic_error("too many variables for the monomial representation");
  }
  for (const Curve& c : curves_) line_weight_.push_back(c.cls.line_degree());
}

int CoxRing::index(std::string_view name) const {
  const auto v = curves_.find(name);
  if (!v) throw std::invalid_argument("unknown variable '" + std::string(name) + "' for r = " + std::to_string(r()));
  return *v;
}

std::vector<int> CoxRing::e_variables() const {
  std::vector<int> out;
  for (int v = 0; v < num_variables(); ++v) {
    if (is_e_variable(v)) out.push_back(v);
  }
  return out;
}

DivisorClass CoxRing::pic_degree(const Monomial& m) const {
  ClassVector sum = ClassVector::Zero(r() + 1);
  for (int v = 0; v < num_variables(); ++v) {
    if (m[v] != 0) sum += m[v] * variable_degree(v).coeffs();
  }
  return DivisorClass(sum);
}

std::vector<Monomial> CoxRing::enumerate_monomials(const DivisorClass& d) const {
  if (d.r() != r()) throw DimensionError("degree and ring differ in r");
  std::vector<Monomial> out;
  if (d.line_degree() < 0) return out;
  std::vector<int> others;
  for (int v = 0; v < num_variables(); ++v) {
    if (!is_e_variable(v)) others.push_back(v);
  }
  const std::vector<int> evars = e_variables();
  Monomial current;
  ClassVector acc = ClassVector::Zero(r() + 1);
  // Non-e variables only lower the e-coefficients, so each e-exponent is determined
  // once the non-e part is fixed.
  auto deficit = [&]() {
    int s = 0;
    for (int i = 1; i <= r(); ++i) s += std::max(0, acc(i) - d[i]);
    return s;
  };
  auto rec = [&](auto&& self, std::size_t k, int budget) -> void {
    if (2 * deficit() > 5 * budget) return;
    if (budget == 0) {
      Monomial m = current;
      for (int i = 1; i <= r(); ++i) m.set(evars[static_cast<std::size_t>(i - 1)], d[i] - acc(i));
      out.push_back(m);
      return;
    }
    if (k == others.size()) return;
    const int v = others[k];
    const int w = line_weight_[static_cast<std::size_t>(v)];
    const int max_power = budget / w;
    for (int p = 0; p <= max_power; ++p) {
      current.set(v, p);
      if (p > 0) acc += variable_degree(v).coeffs();
      self(self, k + 1, budget - p * w);
    }
    acc -= max_power * variable_degree(v).coeffs();
    current.set(v, 0);
  };
  rec(rec, 0, d.line_degree());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<Monomial> CoxRing::monomials_of_degree(int k) const {
  std::vector<Monomial> out;
  Monomial current;
  auto rec = [&](auto&& self, int v, int left) -> void {
    if (v == num_variables() - 1) {
      current.set(v, left);
      out.push_back(current);
      current.set(v, 0);
      return;
    }
    for (int p = left; p >= 0; --p) {
      current.set(v, p);
      self(self, v + 1, left - p);
    }
    current.set(v, 0);
  };
  if (k >= 0) rec(rec, 0, k);
  return out;
}

Monomial CoxRing::act(const WeylElement& g, const Monomial& m) const {
  Monomial out;
  for (int v = 0; v < num_variables(); ++v) out.set(g.curve_perm[static_cast<std::size_t>(v)], m[v]);
  return out;
}

Monomial CoxRing::parse_monomial(std::string_view text) const {
  Monomial m;
  if (text == "1") return m;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t star = text.find('*', start);
    std::string_view factor = text.substr(start, star == std::string_view::npos ? text.size() - start : star - start);
    int power = 1;
    const std::size_t caret = factor.find('^');
    if (caret != std::string_view::npos) {
      power = std::stoi(std::string(factor.substr(caret + 1)));
      factor = factor.substr(0, caret);
    }
    if (power < 0) throw std::invalid_argument("negative exponent in '" + std::string(text) + "'");
    const int v = index(factor);
    const int total = m[v] + power;
    if (total > 255) throw std::out_of_range("exponent too large in '" + std::string(text) + "'");
    m.set(v, total);
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return m;
}

std::string CoxRing::format(const Monomial& m) const {
  std::string out;
  for (int v = 0; v < num_variables(); ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += name(v);
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out.empty() ? "1" : out;
}

const CoxRing& cox_ring(int r) {
  check_point_count(r);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CoxRing>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[r];
  if (!slot) slot = std::make_unique<CoxRing>(r);
  return *slot;
}

namespace {

void check_permutation(const std::vector<int>& sequence) {
  std::vector<bool> seen(sequence.size(), false);
  for (int v : sequence) {
    if (v < 0 || v >= static_cast<int>(sequence.size()) || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("variable sequence is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t k = s.find(sep, start);
    parts.push_back(trim(s.substr(start, k == std::string_view::npos ? s.size() - start : k - start)));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return parts;
}

std::vector<int> parse_sequence(std::string_view text, const CoxRing& ring) {
  std::vector<int> seq;
  std::vector<bool> used(static_cast<std::size_t>(ring.num_variables()), false);
  for (const std::string& name : split(text, '>')) {
    if (name.empty()) continue;
    const int v = ring.index(name);
    if (used[static_cast<std::size_t>(v)]) throw std::invalid_argument("variable '" + name + "' repeated in order");
    used[static_cast<std::size_t>(v)] = true;
    seq.push_back(v);
  }
  for (int v = 0; v < ring.num_variables(); ++v) {
    if (!used[static_cast<std::size_t>(v)]) seq.push_back(v);
  }
  return seq;
}

}  // namespace

MonomialOrder MonomialOrder::revlex(std::vector<int> sequence) {
  check_permutation(sequence);
  MonomialOrder o;
  o.sequence_ = std::move(sequence);
  return o;
}

MonomialOrder MonomialOrder::weighted(std::vector<std::int64_t> weights, std::vector<int> sequence) {
  if (weights.size() != sequence.size()) throw std::invalid_argument("weight vector has the wrong length");
  MonomialOrder o = revlex(std::move(sequence));
  if (std::any_of(weights.begin(), weights.end(), [](auto w) { return w != 0; })) o.weights_ = std::move(weights);
  return o;
}

MonomialOrder MonomialOrder::canonical(int num_variables) {
  std::vector<int> seq(static_cast<std::size_t>(num_variables));
  std::iota(seq.begin(), seq.end(), 0);
  return revlex(std::move(seq));
}

MonomialOrder MonomialOrder::parse(std::string_view spec, const CoxRing& ring) {
  const std::string s = trim(spec);
  const int n = ring.num_variables();
  if (s.rfind("revlex:", 0) == 0) return revlex(parse_sequence(std::string_view(s).substr(7), ring));
  if (s.rfind("weights:", 0) != 0) throw std::invalid_argument("order spec must start with revlex: or weights:");
  std::string rest = s.substr(8);
  std::vector<int> seq = parse_sequence("", ring);
  const std::size_t semi = rest.find(';');
  if (semi != std::string::npos) {
    const std::string tie = trim(std::string_view(rest).substr(semi + 1));
    const std::string prefix = "tiebreak:revlex:";
    if (tie.rfind(prefix, 0) != 0) throw std::invalid_argument("tiebreak must be 'tiebreak:revlex:...'");
    seq = parse_sequence(std::string_view(tie).substr(prefix.size()), ring);
    rest = trim(std::string_view(rest).substr(0, semi));
  }
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
    throw std::invalid_argument("weights must be written as [...]");
  }
  std::vector<std::int64_t> weights(static_cast<std::size_t>(n), 0);
  const auto items = split(std::string_view(rest).substr(1, rest.size() - 2), ',');
  const bool named = !items.empty() && items[0].find('=') != std::string::npos;
  if (!named && items.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("expected " + std::to_string(n) + " weights");
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (named) {
      const auto kv = split(items[k], '=');
      if (kv.size() != 2) throw std::invalid_argument("bad weight entry '" + items[k] + "'");
      weights[static_cast<std::size_t>(ring.index(kv[0]))] = std::stoll(kv[1]);
    } else {
      weights[k] = std::stoll(items[k]);
    }
  }
  return weighted(std::move(weights), std::move(seq));
}

std::string MonomialOrder::spec(const CoxRing& ring) const {
  std::ostringstream out;
  std::string seq;
  for (std::size_t k = 0; k < sequence_.size(); ++k) {
    if (k > 0) seq += '>';
    seq += ring.name(sequence_[k]);
  }
  if (weights_.empty()) return "revlex:" + seq;
  out << "weights:[";
  for (std::size_t v = 0; v < weights_.size(); ++v) {
    if (v > 0) out << ',';
    out << weights_[v];
  }
  out << "];tiebreak:revlex:" << seq;
  return out.str();
}

MonomialOrder MonomialOrder::twisted(const WeylElement& g) const {
  const std::size_t n = sequence_.size();
  std::vector<int> inv(n);
  for (std::size_t v = 0; v < n; ++v) inv[g.curve_perm[v]] = static_cast<int>(v);
  MonomialOrder o;
  o.sequence_.resize(n);
  for (std::size_t k = 0; k < n; ++k) o.sequence_[k] = inv[static_cast<std::size_t>(sequence_[k])];
  if (!weights_.empty()) {
    o.weights_.resize(n);
    for (std::size_t v = 0; v < n; ++v) o.weights_[v] = weights_[g.curve_perm[v]];
  }
  return o;
}

}  // namespace coxlab
