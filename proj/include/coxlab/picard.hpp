#pragma once

// Picard lattice of the blow-up of the plane at r points (4 <= r <= 6): the
// intersection form, exceptional curves, conic classes and the Weyl group.

#include <Eigen/Core>

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coxlab {

inline constexpr int kMinPoints = 4;
inline constexpr int kMaxPoints = 6;

using ClassVector =
    Eigen::Matrix<int, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxPoints + 1, 1>;
using LatticeMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                    kMaxPoints + 1, kMaxPoints + 1>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws std::out_of_range unless kMinPoints <= r <= kMaxPoints.
void check_point_count(int r);

/// m*l + a_1 e_1 + ... + a_r e_r, stored as (m, a_1, ..., a_r).
class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(ClassVector coeffs) : coeffs_(std::move(coeffs)) {}
  DivisorClass(std::initializer_list<int> coeffs);

  static DivisorClass zero(int r);
  static DivisorClass line(int r);
  static DivisorClass exceptional(int r, int i);  // e_i, 1-based
  static DivisorClass canonical(int r);           // K = -3l + e_1 + ... + e_r
  /// Accepts "m,a1,...,ar" or symbolic "2l-e1-2e3+e4".
  static DivisorClass parse(std::string_view text, int r);

  int r() const { return static_cast<int>(coeffs_.size()) - 1; }
  int line_degree() const { return coeffs_(0); }
  /// k = 0 is the l-coefficient, k = i the e_i-coefficient.
  int operator[](int k) const { return coeffs_(k); }
  const ClassVector& coeffs() const { return coeffs_; }

  /// Symbolic form, e.g. "2l-e1-e2-e3-e4"; the zero class prints as "0".
  std::string str() const;
  /// Comma-separated coefficient form "m,a1,...,ar".
  std::string vector_str() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator-(const DivisorClass& a);
  friend DivisorClass operator*(int k, const DivisorClass& a);

  friend bool operator==(const DivisorClass& a, const DivisorClass& b);
  friend std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b);

 private:
  ClassVector coeffs_;
};

struct DivisorClassHash {
  std::size_t operator()(const DivisorClass& d) const;
};

/// m1*m2 - sum a_i b_i; throws DimensionError when the classes live on different X_r.
int intersect(const DivisorClass& a, const DivisorClass& b);
/// -K . D
int coarse_degree(const DivisorClass& d);

enum class CurveKind { exceptional_divisor, line, conic };

struct Curve {
  std::string label;  // e3, f12, g2 (or g for r = 5)
  DivisorClass cls;
  CurveKind kind;
  std::array<int, 2> indices;  // e_i: {i,0}; f_ij: {i,j}; g_i: {i,0}; r=5 g: {0,0}
};

/// Exceptional curves in canonical order e_1..e_r, f_12, f_13, .., f_{r-1,r}, g_1, ...
class CurveSet {
 public:
  CurveSet() = default;
  CurveSet(int r, std::vector<Curve> curves);

  int r() const { return r_; }
  std::size_t size() const { return curves_.size(); }
  const Curve& operator[](std::size_t i) const { return curves_[i]; }
  auto begin() const { return curves_.begin(); }
  auto end() const { return curves_.end(); }

  std::optional<int> find(const DivisorClass& d) const;
  std::optional<int> find(std::string_view label) const;

 private:
  int r_ = 0;
  std::vector<Curve> curves_;
  std::unordered_map<DivisorClass, int, DivisorClassHash> by_class_;
  std::unordered_map<std::string, int> by_label_;
};

/// All classes with K.C = -1 and C^2 = -1, found by searching the coefficient box
/// m in [0, 2], a_i in [-1, 1].
CurveSet enumerate_exceptional(int r);
/// All classes with -K.C = 2 and C^2 = 0, sorted lexicographically on coefficients.
std::vector<DivisorClass> enumerate_conics(int r);

struct WeylElement {
  LatticeMatrix matrix;                   // acts on coefficient columns
  std::vector<std::uint8_t> curve_perm;   // curve i -> curve curve_perm[i]
};

/// Derives the curve permutation; throws std::invalid_argument if the matrix does
/// not permute the exceptional classes.
WeylElement make_weyl_element(const CurveSet& curves, const LatticeMatrix& matrix);
WeylElement identity_element(const CurveSet& curves);
/// g o h (apply h first).
WeylElement compose(const WeylElement& g, const WeylElement& h);
WeylElement inverse(const WeylElement& g);
DivisorClass act(const WeylElement& g, const DivisorClass& d);
/// Adjacent transpositions s_1..s_{r-1} of the e_i followed by the Cremona element.
std::vector<WeylElement> weyl_generators(const CurveSet& curves);
LatticeMatrix cremona_matrix(int r);
LatticeMatrix transposition_matrix(int r, int i, int j);

struct LatticeMatrixHash {
  std::size_t operator()(const LatticeMatrix& m) const;
};

class WeylGroup {
 public:
  /// Breadth-first closure of the generators; elements()[0] is the identity.
  explicit WeylGroup(int r);

  int r() const { return curves_.r(); }
  std::size_t order() const { return elements_.size(); }
  const CurveSet& curves() const { return curves_; }
  const std::vector<WeylElement>& elements() const { return elements_; }
  const std::vector<WeylElement>& generators() const { return generators_; }
  const WeylElement& operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const LatticeMatrix& m) const;
  std::size_t inverse_index(std::size_t i) const;

 private:
  CurveSet curves_;
  std::vector<WeylElement> generators_;
  std::vector<WeylElement> elements_;
  std::unordered_map<LatticeMatrix, std::size_t, LatticeMatrixHash> index_;
};

/// Shared, lazily built group for each r.
const WeylGroup& weyl_group(int r);
const CurveSet& exceptional_curves(int r);

/// Orbits of the generated group on a finite set of classes closed under it.
std::vector<std::vector<DivisorClass>> orbits(const std::vector<WeylElement>& generators,
                                              const std::vector<DivisorClass>& classes);

}  // namespace coxlab
