#include "coxlab/curvegraph.hpp"

#include "coxlab/symmetry.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace coxlab {

int CurveGraph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  const auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{u, v});
  return it != edges.end() && *it == std::pair{u, v} ? static_cast<int>(it - edges.begin()) : -1;
}

Monomial CurveGraph::edge_monomial(int e) const {
  const auto [u, v] = edges[static_cast<std::size_t>(e)];
  return Monomial::variable(u) * Monomial::variable(v);
}

CurveGraph build_graph(int r) {
  const CoxRing& ring = cox_ring(r);
  CurveGraph g;
  g.r = r;
  g.num_vertices = ring.num_variables();
  g.colors = enumerate_conics(r);
  g.color_edges.resize(g.colors.size());
  g.neighbours.assign(static_cast<std::size_t>(g.num_vertices), 0);
  for (int u = 0; u < g.num_vertices; ++u) {
    for (int v = u + 1; v < g.num_vertices; ++v) {
      if (intersect(ring.variable_degree(u), ring.variable_degree(v)) != 1) continue;
      const DivisorClass c = ring.variable_degree(u) + ring.variable_degree(v);
      const auto it = std::find(g.colors.begin(), g.colors.end(), c);
      if (it == g.colors.end()) throw std::logic_error("edge whose class is not a conic: " + c.str());
      const int e = static_cast<int>(g.edges.size());
      g.edges.emplace_back(u, v);
      g.edge_color.push_back(static_cast<int>(it - g.colors.begin()));
      g.color_edges[static_cast<std::size_t>(it - g.colors.begin())].push_back(e);
      g.neighbours[static_cast<std::size_t>(u)] |= 1u << v;
      g.neighbours[static_cast<std::size_t>(v)] |= 1u << u;
    }
  }
  return g;
}

MonomialIdeal edge_ideal(const CurveGraph& g, const EdgeSet& edges) {
  std::vector<Monomial> gens;
  for (int e : edges) gens.push_back(g.edge_monomial(e));
  return MonomialIdeal(gens);
}

std::optional<EdgeSet> edges_of(const CurveGraph& g, const MonomialIdeal& m) {
  EdgeSet out;
  for (const Monomial& u : m.generators()) {
    if (u.degree() != 2 || !u.is_squarefree()) return std::nullopt;
    const std::uint32_t mask = u.support_mask();
    const int a = std::countr_zero(mask);
    const int b = 31 - std::countl_zero(mask);
    const int e = g.edge_index(a, b);
    if (e < 0) return std::nullopt;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_selection(const CurveGraph& g, const EdgeSet& edges) {
  std::vector<int> count(g.colors.size(), 0);
  for (int e : edges) ++count[static_cast<std::size_t>(g.edge_color[static_cast<std::size_t>(e)])];
  return std::all_of(count.begin(), count.end(), [&](int c) { return c == g.per_color(); }) &&
         std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

std::uint64_t raw_candidate_count(int r) {
  const std::uint64_t choices = static_cast<std::uint64_t>((r - 1) * (r - 2) / 2);  // binom(r-1, 2) = binom(r-1, r-3)
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < enumerate_conics(r).size(); ++k) total *= choices;
  return total;
}

namespace {

// Index subsets of size k of {0..n-1}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// Per color, the edge sets of every admissible choice.
std::vector<std::vector<EdgeSet>> color_choices(const CurveGraph& g) {
  std::vector<std::vector<EdgeSet>> out;
  for (const auto& ce : g.color_edges) {
    std::vector<EdgeSet> choices;
    for (const auto& s : subsets(static_cast<int>(ce.size()), g.per_color())) {
      EdgeSet c;
      for (int i : s) c.push_back(ce[static_cast<std::size_t>(i)]);
      choices.push_back(c);
    }
    out.push_back(std::move(choices));
  }
  return out;
}

std::int64_t binom2(int m) { return static_cast<std::int64_t>(m + 2) * (m + 1) / 2; }

}  // namespace

void for_each_selection(const CurveGraph& g, const std::function<void(const EdgeSet&)>& visit) {
  const auto choices = color_choices(g);
  EdgeSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == choices.size()) {
      EdgeSet sorted = cur;
      std::sort(sorted.begin(), sorted.end());
      visit(sorted);
      return;
    }
    for (const EdgeSet& c : choices[k]) {
      cur.insert(cur.end(), c.begin(), c.end());
      rec(k + 1);
      cur.resize(cur.size() - c.size());
    }
  };
  rec(0);
}

FilterReport filter_candidate(const CurveGraph& g, const EdgeSet& edges) {
  const CoxRing& ring = cox_ring(g.r);
  const MonomialIdeal m = edge_ideal(g, edges);
  FilterReport rep;
  const std::uint32_t all = g.num_vertices == 32 ? ~0u : (1u << g.num_vertices) - 1;
  rep.omits_variable = m.support_mask() != all;
  rep.binomial_counts = true;
  for (int k = 0; k <= 3 && rep.binomial_counts; ++k) {
    const StableCount sc = stable_count(ring, m, k);
    rep.binomial_counts = sc.stable && sc.value == binom2(k);
  }
  rep.hs_invariant = hs_invariant(ring, m, weyl_group(g.r).generators());
  return rep;
}

std::vector<EdgeSet> filter_candidates(const CurveGraph& g, const std::vector<EdgeSet>& candidates,
                                       bool require_omitted) {
  std::vector<EdgeSet> out;
  for (const EdgeSet& c : candidates) {
    const FilterReport rep = filter_candidate(g, c);
    if (require_omitted ? rep.passes() : rep.invariants_hold()) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<int>> edge_permutations(const CurveGraph& g, const std::vector<WeylElement>& elements) {
  std::vector<std::vector<int>> out;
  out.reserve(elements.size());
  for (const WeylElement& w : elements) {
    std::vector<int> perm(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [u, v] = g.edges[e];
      perm[e] = g.edge_index(w.curve_perm[static_cast<std::size_t>(u)], w.curve_perm[static_cast<std::size_t>(v)]);
    }
    out.push_back(std::move(perm));
  }
  return out;
}

EdgeSet act_on_edges(const std::vector<int>& perm, const EdgeSet& edges) {
  EdgeSet out;
  out.reserve(edges.size());
  for (int e : edges) out.push_back(perm[static_cast<std::size_t>(e)]);
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet canonical_form(const EdgeSet& edges, const std::vector<std::vector<int>>& perms) {
  EdgeSet best = edges;
  for (const auto& p : perms) {
    EdgeSet img = act_on_edges(p, edges);
    if (img < best) best = std::move(img);
  }
  return best;
}

std::vector<EdgeSet> orbit_classes(const std::vector<EdgeSet>& selections, const std::vector<std::vector<int>>& perms) {
  std::set<EdgeSet> seen;
  std::vector<EdgeSet> reps;
  for (const EdgeSet& s : selections) {
    if (seen.contains(s)) continue;
    EdgeSet best = s;
    for (const auto& p : perms) {
      EdgeSet img = act_on_edges(p, s);
      if (img < best) best = img;
      seen.insert(std::move(img));
    }
    seen.insert(s);
    reps.push_back(std::move(best));
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::vector<DegreeTarget> hilbert_targets(const CurveGraph& g, const std::function<std::int64_t(const DivisorClass&)>& h0,
                                          int max_coarse) {
  const CoxRing& ring = cox_ring(g.r);
  if (g.edges.size() > 64) throw std::invalid_argument("edge masks need at most 64 edges");
  std::map<DivisorClass, std::vector<std::uint64_t>> by_degree;
  for (int k = 3; k <= max_coarse; ++k) {
    for (const Monomial& m : ring.monomials_of_degree(k)) {
      const std::uint32_t support = m.support_mask();
      std::uint64_t mask = 0;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        if ((support >> u & 1u) && (support >> v & 1u)) mask |= std::uint64_t{1} << e;
      }
      by_degree[ring.pic_degree(m)].push_back(mask);
    }
  }
  std::vector<DegreeTarget> out;
  for (auto& [d, masks] : by_degree) {
    // Degrees no edge can touch carry no information.
    if (std::all_of(masks.begin(), masks.end(), [](std::uint64_t m) { return m == 0; })) continue;
    out.push_back({d, std::move(masks), h0(d)});
  }
  return out;
}

SearchResult search_selections(const CurveGraph& g, const std::vector<DegreeTarget>& targets, int workers) {
  if (g.edges.size() > 64) throw std::invalid_argument("search needs at most 64 edges");
  const auto choices = color_choices(g);
  const std::size_t colors = choices.size();
  std::vector<std::vector<std::uint64_t>> choice_masks(colors);
  std::vector<std::uint64_t> rest(colors + 1, 0);
  for (std::size_t k = 0; k < colors; ++k) {
    for (const EdgeSet& c : choices[k]) {
      std::uint64_t m = 0;
      for (int e : c) m |= std::uint64_t{1} << e;
      choice_masks[k].push_back(m);
    }
  }
  for (std::size_t k = colors; k-- > 0;) {
    std::uint64_t all = 0;
    for (int e : g.color_edges[k]) all |= std::uint64_t{1} << e;
    rest[k] = rest[k + 1] | all;
  }
  auto consistent = [&](std::uint64_t chosen, std::uint64_t possible) {
    for (const DegreeTarget& t : targets) {
      std::int64_t alive = 0;
      std::int64_t alive_at_most = 0;
      for (std::uint64_t m : t.edge_masks) {
        if ((m & chosen) == 0) ++alive;
        if ((m & possible) == 0) ++alive_at_most;
      }
      if (alive < t.target || alive_at_most > t.target) return false;
    }
    return true;
  };

  // Work items: all choices for the first two colors.
  std::vector<std::uint64_t> prefixes;
  for (std::uint64_t a : choice_masks[0]) {
    for (std::uint64_t b : colors > 1 ? choice_masks[1] : std::vector<std::uint64_t>{0}) prefixes.push_back(a | b);
  }
  const std::size_t start_depth = std::min<std::size_t>(2, colors);
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mu;
  std::vector<std::uint64_t> found;
  auto work = [&] {
    std::vector<std::uint64_t> local;
    std::uint64_t local_nodes = 0;
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t k, std::uint64_t chosen) {
      ++local_nodes;
      if (!consistent(chosen, chosen | rest[k])) return;
      if (k == colors) {
        local.push_back(chosen);
        return;
      }
      for (std::uint64_t c : choice_masks[k]) rec(k + 1, chosen | c);
    };
    for (std::size_t i = next++; i < prefixes.size(); i = next++) rec(start_depth, prefixes[i]);
    nodes += local_nodes;
    std::lock_guard lock(mu);
    found.insert(found.end(), local.begin(), local.end());
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::max(workers, 1); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SearchResult res;
  res.nodes = nodes;
  for (std::uint64_t m : found) {
    EdgeSet s;
    for (std::uint64_t x = m; x != 0; x &= x - 1) s.push_back(std::countr_zero(x));
    res.selections.push_back(std::move(s));
  }
  std::sort(res.selections.begin(), res.selections.end());
  return res;
}

WeightFeasibility selection_weights(const CurveGraph& g, const EdgeSet& edges) {
  const int n = g.num_vertices;
  std::vector<bool> chosen(g.edges.size(), false);
  for (int e : edges) chosen[static_cast<std::size_t>(e)] = true;
  std::vector<std::pair<int, int>> pairs;  // (heavier, lighter)
  for (const auto& ce : g.color_edges) {
    for (int a : ce) {
      if (!chosen[static_cast<std::size_t>(a)]) continue;
      for (int b : ce) {
        if (!chosen[static_cast<std::size_t>(b)]) pairs.emplace_back(a, b);
      }
    }
  }
  Matrix<Rational> a = Matrix<Rational>::Zero(static_cast<Eigen::Index>(pairs.size()), n);
  Vector<Rational> b = Vector<Rational>::Constant(static_cast<Eigen::Index>(pairs.size()), Rational(1));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const auto [u1, v1] = g.edges[static_cast<std::size_t>(pairs[i].first)];
    const auto [u2, v2] = g.edges[static_cast<std::size_t>(pairs[i].second)];
    a(row, u1) += Rational(1);
    a(row, v1) += Rational(1);
    a(row, u2) -= Rational(1);
    a(row, v2) -= Rational(1);
  }
  const InequalityResult res = solve_inequalities(a, b);
  WeightFeasibility out;
  out.feasible = res.feasible;
  out.verified = verify_inequality_result(a, b, res);
  if (!res.feasible) {
    out.certificate = res.certificate;
    return out;
  }
  mpz_class den = 1;
  for (Eigen::Index i = 0; i < n; ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), res.point(i).value().get_den_mpz_t());
  std::vector<mpz_class> w(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const mpq_class& q = res.point(i).value();
    w[static_cast<std::size_t>(i)] = q.get_num() * (den / q.get_den());
  }
  // Every compared monomial is quadratic, so a common shift changes nothing.
  const mpz_class shift = 1 - *std::min_element(w.begin(), w.end());
  for (auto& x : w) {
    x += shift;
    if (!x.fits_slong_p()) throw std::overflow_error("weight does not fit in 64 bits");
    out.weights.push_back(x.get_si());
  }
  return out;
}

EdgeSet quadratic_part(const CurveGraph& g, const MonomialOrder& ord) {
  EdgeSet out;
  for (const auto& ce : g.color_edges) {
    std::vector<int> sorted = ce;
    std::sort(sorted.begin(), sorted.end(),
              [&](int a, int b) { return ord.less(g.edge_monomial(b), g.edge_monomial(a)); });
    out.insert(out.end(), sorted.begin(), sorted.begin() + g.per_color());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_triangle(const CurveGraph& g, const std::array<int, 3>& t) {
  return g.adjacent(t[0], t[1]) && g.adjacent(t[0], t[2]) && g.adjacent(t[1], t[2]);
}

bool check_config_witness(const CurveGraph& g, const std::array<int, 3>& triple, const ConfigWitness& w) {
  if (w.conic < 0 || w.conic >= static_cast<int>(g.colors.size())) return false;
  std::vector<int> used{w.c[0]};
  for (int i = 1; i <= 5; ++i) {
    used.push_back(w.c[static_cast<std::size_t>(i)]);
    used.push_back(w.h[static_cast<std::size_t>(i)]);
  }
  std::vector<int> sorted = used;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (int v : used) {
    if (std::find(triple.begin(), triple.end(), v) != triple.end()) return false;
  }
  EdgeSet sections;
  for (int i = 1; i <= 5; ++i) {
    const int hi = w.h[static_cast<std::size_t>(i)];
    for (int j = i + 1; j <= 5; ++j) {
      if (g.adjacent(hi, w.h[static_cast<std::size_t>(j)])) return false;
    }
    for (int j = 0; j <= 5; ++j) {
      const bool should_meet = j == 0 || j == i;
      if (g.adjacent(hi, w.c[static_cast<std::size_t>(j)]) != should_meet) return false;
    }
    const int e = g.edge_index(w.c[static_cast<std::size_t>(i)], hi);
    if (e < 0 || g.edge_color[static_cast<std::size_t>(e)] != w.conic) return false;
    sections.push_back(e);
  }
  std::sort(sections.begin(), sections.end());
  return sections == g.color_edges[static_cast<std::size_t>(w.conic)];
}

std::optional<ConfigWitness> config_witness(const CurveGraph& g, const std::array<int, 3>& triple) {
  if (g.r != 6) throw std::invalid_argument("the configuration argument concerns r = 6");
  if (is_triangle(g, triple)) return std::nullopt;
  const auto in_triple = [&](int v) { return std::find(triple.begin(), triple.end(), v) != triple.end(); };
  for (std::size_t d = 0; d < g.colors.size(); ++d) {
    const auto& ce = g.color_edges[d];
    bool clear = true;
    for (int e : ce) clear = clear && !in_triple(g.edges[static_cast<std::size_t>(e)].first) &&
                             !in_triple(g.edges[static_cast<std::size_t>(e)].second);
    if (!clear) continue;
    for (int flips = 0; flips < 32; ++flips) {
      ConfigWitness w;
      w.conic = static_cast<int>(d);
      for (int i = 1; i <= 5; ++i) {
        auto [u, v] = g.edges[static_cast<std::size_t>(ce[static_cast<std::size_t>(i - 1)])];
        if (flips >> (i - 1) & 1) std::swap(u, v);
        w.c[static_cast<std::size_t>(i)] = u;
        w.h[static_cast<std::size_t>(i)] = v;
      }
      for (int c0 = 0; c0 < g.num_vertices; ++c0) {
        if (in_triple(c0)) continue;
        w.c[0] = c0;
        if (check_config_witness(g, triple, w)) return w;
      }
    }
  }
  return std::nullopt;
}

ObstructionVerdict small_candidate_obstruction(const CurveGraph& g, const EdgeSet& edges,
                                               const std::array<int, 3>& omitted) {
  ObstructionVerdict v;
  v.triangle = is_triangle(g, omitted);
  if (v.triangle) return v;
  std::uint32_t touched = 0;
  for (int e : edges) {
    touched |= 1u << g.edges[static_cast<std::size_t>(e)].first;
    touched |= 1u << g.edges[static_cast<std::size_t>(e)].second;
  }
  for (int x : omitted) {
    if (touched >> x & 1u) throw std::invalid_argument("candidate uses a vertex of the omitted triple");
  }
  v.witness = config_witness(g, omitted);
  if (!v.witness) return v;
  std::vector<int> missing;  // sections of the conic outside the candidate
  for (int i = 1; i <= 5; ++i) {
    const int e = g.edge_index(v.witness->c[static_cast<std::size_t>(i)], v.witness->h[static_cast<std::size_t>(i)]);
    if (!std::binary_search(edges.begin(), edges.end(), e)) missing.push_back(i);
  }
  if (missing.size() < 2) return v;
  std::vector<int> set;
  for (int i = 1; i <= 5; ++i) set.push_back(v.witness->c[static_cast<std::size_t>(i)]);
  set.push_back(v.witness->h[static_cast<std::size_t>(missing[0])]);
  set.push_back(v.witness->h[static_cast<std::size_t>(missing[1])]);
  set.insert(set.end(), omitted.begin(), omitted.end());
  std::uint32_t mask = 0;
  for (int x : set) mask |= 1u << x;
  for (int e : edges) {
    const auto [a, b] = g.edges[static_cast<std::size_t>(e)];
    if ((mask >> a & 1u) && (mask >> b & 1u)) return v;
  }
  std::sort(set.begin(), set.end());
  v.independent = set;
  v.codimension_bound = g.num_vertices - static_cast<int>(set.size());
  return v;
}

std::string to_dot(const CurveGraph& g, const EdgeSet& chosen) {
  static const char* const palette[] = {"red",   "blue",     "darkgreen", "orange", "purple", "brown",
                                        "cyan4", "magenta4", "gold3",     "gray40", "navy",   "olivedrab"};
  const CoxRing& ring = cox_ring(g.r);
  std::ostringstream out;
  out << "graph L" << g.r << " {\n";
  for (int v = 0; v < g.num_vertices; ++v) out << "  " << ring.name(v) << ";\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    const int c = g.edge_color[e];
    out << "  " << ring.name(u) << " -- " << ring.name(v) << " [color=\"" << palette[c % 12] << "\", label=\""
        << g.colors[static_cast<std::size_t>(c)].str() << "\"";
    if (std::binary_search(chosen.begin(), chosen.end(), static_cast<int>(e))) out << ", style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace coxlab
