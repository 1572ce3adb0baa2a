#include "coxlab/picard.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

namespace coxlab {

void check_point_count(int r) {
  if (r < kMinPoints || r > kMaxPoints) {
    throw std::out_of_range("number of blown-up points must be in [4, 6], got " +
                            std::to_string(r));
  }
}

DivisorClass::DivisorClass(std::initializer_list<int> coeffs) {
  coeffs_.resize(static_cast<Eigen::Index>(coeffs.size()));
  Eigen::Index k = 0;
  for (int c : coeffs) coeffs_(k++) = c;
}

DivisorClass DivisorClass::zero(int r) {
  ClassVector v = ClassVector::Zero(r + 1);
  return DivisorClass(v);
}

DivisorClass DivisorClass::line(int r) {
  DivisorClass d = zero(r);
  d.coeffs_(0) = 1;
  return d;
}

DivisorClass DivisorClass::exceptional(int r, int i) {
  if (i < 1 || i > r) throw std::out_of_range("exceptional index out of range");
  DivisorClass d = zero(r);
  d.coeffs_(i) = 1;
  return d;
}

DivisorClass DivisorClass::canonical(int r) {
  ClassVector v = ClassVector::Ones(r + 1);
  v(0) = -3;
  return DivisorClass(v);
}

namespace {

int parse_int(std::string_view s) {
  int value = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

DivisorClass DivisorClass::parse(std::string_view text, int r) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty divisor class");
  DivisorClass d = zero(r);
  if (s.find(',') != std::string::npos) {
    std::vector<int> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = s.find(',', start);
      parts.push_back(parse_int(std::string_view(s).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(parts.size()) != r + 1) {
      throw DimensionError("divisor class '" + s + "' needs " + std::to_string(r + 1) +
                           " coefficients");
    }
    for (int k = 0; k <= r; ++k) d.coeffs_(k) = parts[static_cast<std::size_t>(k)];
    return d;
  }
  if (s == "0") return d;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t digits = pos;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    const int mult = digits > pos ? parse_int(std::string_view(s).substr(pos, digits - pos)) : 1;
    pos = digits;
    if (pos >= s.size()) throw std::invalid_argument("bad divisor class '" + s + "'");
    const char sym = s[pos++];
    if (sym == 'l' || sym == 'L') {
      d.coeffs_(0) += sign * mult;
    } else if (sym == 'K') {
      d += (sign * mult) * canonical(r);
    } else if (sym == 'e') {
      std::size_t end = pos;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      if (end == pos) throw std::invalid_argument("bad divisor class '" + s + "'");
      const int i = parse_int(std::string_view(s).substr(pos, end - pos));
      if (i < 1 || i > r) throw DimensionError("index e" + std::to_string(i) + " out of range");
      d.coeffs_(i) += sign * mult;
      pos = end;
    } else {
      throw std::invalid_argument("bad divisor class '" + s + "'");
    }
  }
  return d;
}

std::string DivisorClass::str() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](int c, const std::string& sym) {
    if (c == 0) return;
    if (c < 0) {
      out << '-';
    } else if (!first) {
      out << '+';
    }
    if (c != 1 && c != -1) out << (c < 0 ? -c : c);
    out << sym;
    first = false;
  };
  emit(coeffs_(0), "l");
  for (int i = 1; i <= r(); ++i) emit(coeffs_(i), "e" + std::to_string(i));
  return first ? "0" : out.str();
}

std::string DivisorClass::vector_str() const {
  std::string s;
  for (int k = 0; k <= r(); ++k) {
    if (k > 0) s += ',';
    s += std::to_string(coeffs_(k));
  }
  return s;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.r() != r()) throw DimensionError("adding classes of different rank");
  coeffs_ += o.coeffs_;
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.r() != r()) throw DimensionError("subtracting classes of different rank");
  coeffs_ -= o.coeffs_;
  return *this;
}

DivisorClass operator-(const DivisorClass& a) { return DivisorClass(ClassVector(-a.coeffs_)); }

DivisorClass operator*(int k, const DivisorClass& a) {
  return DivisorClass(ClassVector(k * a.coeffs_));
}

bool operator==(const DivisorClass& a, const DivisorClass& b) {
  return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b) {
  if (auto c = a.coeffs_.size() <=> b.coeffs_.size(); c != 0) return c;
  for (Eigen::Index k = 0; k < a.coeffs_.size(); ++k) {
    if (auto c = a.coeffs_(k) <=> b.coeffs_(k); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t DivisorClassHash::operator()(const DivisorClass& d) const {
  std::size_t h = static_cast<std::size_t>(d.r()) * 0x9e3779b97f4a7c15ULL;
  for (int k = 0; k <= d.r(); ++k) {
    h ^= static_cast<std::size_t>(d[k] + 0x4000) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int intersect(const DivisorClass& a, const DivisorClass& b) {
  if (a.r() != b.r()) {
    throw DimensionError("intersection of classes on X_" + std::to_string(a.r()) + " and X_" +
                         std::to_string(b.r()));
  }
  int s = a[0] * b[0];
  for (int i = 1; i <= a.r(); ++i) s -= a[i] * b[i];
  return s;
}

int coarse_degree(const DivisorClass& d) {
  return -intersect(DivisorClass::canonical(d.r()), d);
}

CurveSet::CurveSet(int r, std::vector<Curve> curves) : r_(r), curves_(std::move(curves)) {
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    by_class_.emplace(curves_[i].cls, static_cast<int>(i));
    by_label_.emplace(curves_[i].label, static_cast<int>(i));
  }
}

std::optional<int> CurveSet::find(const DivisorClass& d) const {
  auto it = by_class_.find(d);
  if (it == by_class_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> CurveSet::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Calls visit(d) for every class with line degree in [m_lo, m_hi] and e-coefficients in
// [a_lo, a_hi].
void for_each_in_box(int r, int m_lo, int m_hi, int a_lo, int a_hi,
                     const std::function<void(const DivisorClass&)>& visit) {
  DivisorClass d = DivisorClass::zero(r);
  ClassVector v = d.coeffs();
  std::function<void(int)> rec = [&](int k) {
    if (k > r) {
      visit(DivisorClass(v));
      return;
    }
    const int lo = k == 0 ? m_lo : a_lo;
    const int hi = k == 0 ? m_hi : a_hi;
    for (int c = lo; c <= hi; ++c) {
      v(k) = c;
      rec(k + 1);
    }
  };
  rec(0);
}

Curve label_curve(const DivisorClass& d) {
  const int r = d.r();
  Curve c{"", d, CurveKind::exceptional_divisor, {0, 0}};
  if (d.line_degree() == 0) {
    for (int i = 1; i <= r; ++i) {
      if (d[i] == 1) c.indices = {i, 0};
    }
    c.label = "e" + std::to_string(c.indices[0]);
  } else if (d.line_degree() == 1) {
    c.kind = CurveKind::line;
    std::vector<int> idx;
    for (int i = 1; i <= r; ++i) {
      if (d[i] == -1) idx.push_back(i);
    }
    c.indices = {idx.at(0), idx.at(1)};
    c.label = "f" + std::to_string(idx[0]) + std::to_string(idx[1]);
  } else {
    c.kind = CurveKind::conic;
    int missing = 0;
    for (int i = 1; i <= r; ++i) {
      if (d[i] == 0) missing = i;
    }
    c.indices = {missing, 0};
    c.label = missing == 0 ? "g" : "g" + std::to_string(missing);
  }
  return c;
}

}  // namespace

CurveSet enumerate_exceptional(int r) {
  check_point_count(r);
  const DivisorClass k = DivisorClass::canonical(r);
  std::vector<Curve> curves;
  for_each_in_box(r, 0, 2, -1, 1, [&](const DivisorClass& d) {
    if (intersect(k, d) == -1 && intersect(d, d) == -1) curves.push_back(label_curve(d));
  });
  std::sort(curves.begin(), curves.end(), [](const Curve& a, const Curve& b) {
    return std::tuple(static_cast<int>(a.kind), a.indices[0], a.indices[1]) <
           std::tuple(static_cast<int>(b.kind), b.indices[0], b.indices[1]);
  });
  return CurveSet(r, std::move(curves));
}

std::vector<DivisorClass> enumerate_conics(int r) {
  check_point_count(r);
  const DivisorClass k = DivisorClass::canonical(r);
  std::vector<DivisorClass> conics;
  for_each_in_box(r, 0, 3, -2, 1, [&](const DivisorClass& d) {
    if (-intersect(k, d) == 2 && intersect(d, d) == 0) conics.push_back(d);
  });
  std::sort(conics.begin(), conics.end());
  return conics;
}

WeylElement make_weyl_element(const CurveSet& curves, const LatticeMatrix& matrix) {
  WeylElement g{matrix, std::vector<std::uint8_t>(curves.size())};
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const DivisorClass image(ClassVector(matrix * curves[i].cls.coeffs()));
    const auto j = curves.find(image);
    if (!j) throw std::invalid_argument("lattice map does not permute the exceptional curves");
    g.curve_perm[i] = static_cast<std::uint8_t>(*j);
  }
  return g;
}

WeylElement identity_element(const CurveSet& curves) {
  const int n = curves.r() + 1;
  return make_weyl_element(curves, LatticeMatrix::Identity(n, n));
}

WeylElement compose(const WeylElement& g, const WeylElement& h) {
  WeylElement out{LatticeMatrix(g.matrix * h.matrix), std::vector<std::uint8_t>(h.curve_perm.size())};
  for (std::size_t i = 0; i < h.curve_perm.size(); ++i) out.curve_perm[i] = g.curve_perm[h.curve_perm[i]];
  return out;
}

WeylElement inverse(const WeylElement& g) {
  // Isometries of diag(1,-1,...,-1) satisfy g^-1 = J g^T J.
  const Eigen::Index n = g.matrix.rows();
  LatticeMatrix j = LatticeMatrix::Identity(n, n);
  for (Eigen::Index i = 1; i < n; ++i) j(i, i) = -1;
  WeylElement out{LatticeMatrix(j * g.matrix.transpose() * j),
                  std::vector<std::uint8_t>(g.curve_perm.size())};
  for (std::size_t i = 0; i < g.curve_perm.size(); ++i) {
    out.curve_perm[g.curve_perm[i]] = static_cast<std::uint8_t>(i);
  }
  return out;
}

DivisorClass act(const WeylElement& g, const DivisorClass& d) {
  if (g.matrix.cols() != d.coeffs().size()) throw DimensionError("Weyl element and class differ in rank");
  return DivisorClass(ClassVector(g.matrix * d.coeffs()));
}

LatticeMatrix transposition_matrix(int r, int i, int j) {
  LatticeMatrix m = LatticeMatrix::Identity(r + 1, r + 1);
  m(i, i) = 0;
  m(j, j) = 0;
  m(i, j) = 1;
  m(j, i) = 1;
  return m;
}

LatticeMatrix cremona_matrix(int r) {
  LatticeMatrix m = LatticeMatrix::Identity(r + 1, r + 1);
  // columns are the images of l, e_1, e_2, e_3
  m.block(0, 0, 4, 4) << 2, 1, 1, 1,
                         -1, 0, -1, -1,
                         -1, -1, 0, -1,
                         -1, -1, -1, 0;
  return m;
}

std::vector<WeylElement> weyl_generators(const CurveSet& curves) {
  const int r = curves.r();
  std::vector<WeylElement> gens;
  for (int i = 1; i < r; ++i) gens.push_back(make_weyl_element(curves, transposition_matrix(r, i, i + 1)));
  gens.push_back(make_weyl_element(curves, cremona_matrix(r)));
  return gens;
}

std::size_t LatticeMatrixHash::operator()(const LatticeMatrix& m) const {
  std::size_t h = 1469598103934665603ULL;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    h ^= static_cast<std::size_t>(m.data()[k] + 64);
    h *= 1099511628211ULL;
  }
  return h;
}

WeylGroup::WeylGroup(int r) : curves_(enumerate_exceptional(r)) {
  generators_ = weyl_generators(curves_);
  std::deque<std::size_t> queue;
  auto add = [&](WeylElement g) {
    auto [it, inserted] = index_.emplace(g.matrix, elements_.size());
    if (inserted) {
      queue.push_back(elements_.size());
      elements_.push_back(std::move(g));
    }
  };
  add(identity_element(curves_));
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const WeylElement& s : generators_) add(compose(s, elements_[i]));
  }
}

std::optional<std::size_t> WeylGroup::index_of(const LatticeMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WeylGroup::inverse_index(std::size_t i) const {
  return *index_of(inverse(elements_[i]).matrix);
}

const WeylGroup& weyl_group(int r) {
  check_point_count(r);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<WeylGroup>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[r];
  if (!slot) slot = std::make_unique<WeylGroup>(r);
  return *slot;
}

const CurveSet& exceptional_curves(int r) {
  check_point_count(r);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CurveSet>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[r];
  if (!slot) slot = std::make_unique<CurveSet>(enumerate_exceptional(r));
  return *slot;
}

std::vector<std::vector<DivisorClass>> orbits(const std::vector<WeylElement>& generators,
                                              const std::vector<DivisorClass>& classes) {
  std::set<DivisorClass> unseen(classes.begin(), classes.end());
  std::vector<std::vector<DivisorClass>> out;
  while (!unseen.empty()) {
    std::vector<DivisorClass> orbit{*unseen.begin()};
    unseen.erase(unseen.begin());
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const WeylElement& g : generators) {
        DivisorClass image = act(g, orbit[k]);
        auto it = unseen.find(image);
        if (it != unseen.end()) {
          unseen.erase(it);
          orbit.push_back(std::move(image));
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace coxlab
