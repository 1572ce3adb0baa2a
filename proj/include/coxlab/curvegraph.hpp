#pragma once

// The intersection graph of exceptional curves with its edges colored by conic
// classes; edge ideals, the search for quadratic initial ideals, and the
// configuration argument bounding the variables of a quadratic initial ideal for r=6.

#include "coxlab/groebner.hpp"
#include "coxlab/lp.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace coxlab {

struct CurveGraph {
  int r = 0;
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;     // u < v, lexicographic
  std::vector<DivisorClass> colors;           // enumerate_conics order
  std::vector<int> edge_color;                // index into colors
  std::vector<std::vector<int>> color_edges;  // ascending edge indices per color
  std::vector<std::uint32_t> neighbours;      // adjacency masks

  int edge_index(int u, int v) const;  // -1 when not adjacent
  bool adjacent(int u, int v) const { return (neighbours[static_cast<std::size_t>(u)] >> v & 1u) != 0; }
  Monomial edge_monomial(int e) const;
  /// Edges chosen per color in a quadratic initial ideal.
  int per_color() const { return r - 3; }
};

CurveGraph build_graph(int r);

/// Sorted edge indices.
using EdgeSet = std::vector<int>;

MonomialIdeal edge_ideal(const CurveGraph& g, const EdgeSet& edges);
/// The edges of a quadratic squarefree monomial ideal, or nothing if some generator is not an edge.
std::optional<EdgeSet> edges_of(const CurveGraph& g, const MonomialIdeal& m);
/// Exactly per_color() edges of every color.
bool is_selection(const CurveGraph& g, const EdgeSet& edges);
/// binom(r-1, r-3)^(number of colors).
std::uint64_t raw_candidate_count(int r);
/// Every selection without pruning; feasible for r=4 only.
void for_each_selection(const CurveGraph& g, const std::function<void(const EdgeSet&)>& visit);

struct FilterReport {
  bool hs_invariant = false;
  bool binomial_counts = false;  // stable_count(m) = binom(m+2, 2) for m <= 3
  bool omits_variable = false;
  bool passes() const { return hs_invariant && binomial_counts && omits_variable; }
  /// Necessary for every initial ideal, whether or not it omits a variable.
  bool invariants_hold() const { return hs_invariant && binomial_counts; }
};

FilterReport filter_candidate(const CurveGraph& g, const EdgeSet& edges);
/// Keeps candidates that pass(); with require_omitted false, those whose invariants_hold().
std::vector<EdgeSet> filter_candidates(const CurveGraph& g, const std::vector<EdgeSet>& candidates,
                                       bool require_omitted = true);

/// For every group element, the induced permutation of edge indices.
std::vector<std::vector<int>> edge_permutations(const CurveGraph& g, const std::vector<WeylElement>& elements);
EdgeSet act_on_edges(const std::vector<int>& perm, const EdgeSet& edges);
/// Lexicographically smallest sorted image over the group.
EdgeSet canonical_form(const EdgeSet& edges, const std::vector<std::vector<int>>& perms);
std::vector<EdgeSet> orbit_classes(const std::vector<EdgeSet>& selections, const std::vector<std::vector<int>>& perms);

/// Hilbert value every true initial ideal must have in one degree.
struct DegreeTarget {
  DivisorClass degree;
  std::vector<std::uint64_t> edge_masks;  // edges inside the support of each monomial of the degree
  std::int64_t target = 0;
};

/// Targets for all Pic degrees of monomials of coarse degree 3..max_coarse, from the
/// dimension of the Cox ring in each degree.
std::vector<DegreeTarget> hilbert_targets(const CurveGraph& g, const std::function<std::int64_t(const DivisorClass&)>& h0,
                                          int max_coarse);

struct SearchResult {
  std::uint64_t nodes = 0;
  std::vector<EdgeSet> selections;  // leaves meeting every target, sorted
};

/// Backtracking over colors, pruned by the Hilbert targets: a partial choice is dropped
/// when its edge ideal already kills too much in some degree, or when adding every
/// remaining edge could not kill enough. Requires at most 64 edges.
SearchResult search_selections(const CurveGraph& g, const std::vector<DegreeTarget>& targets, int workers);

struct WeightFeasibility {
  bool feasible = false;
  std::vector<std::int64_t> weights;     // integral, positive, when feasible
  Vector<Rational> certificate;          // Farkas multipliers on the dominance inequalities
  bool verified = false;                 // the witness was checked independently
};

/// Is there a weight making the chosen edges of every color heavier than the others?
WeightFeasibility selection_weights(const CurveGraph& g, const EdgeSet& edges);

/// The per_color() largest edges of each color under ord.
EdgeSet quadratic_part(const CurveGraph& g, const MonomialOrder& ord);

template <class S>
struct RealizeReport {
  bool dominance = false;  // the order picks exactly the selection in every color
  bool weight_ties = false;  // a chosen edge only wins through the tie-break
  MonomialIdeal initial;
  bool realized = false;   // the initial ideal of the generators is the edge ideal
};

/// Two-stage realization check for the order given by w refined by canonical revlex.
template <class S>
RealizeReport<S> realize_by_weight(const CurveGraph& g, const EdgeSet& edges, const std::vector<std::int64_t>& w,
                                   const std::vector<Polynomial<S>>& gens) {
  const MonomialOrder ord = MonomialOrder::weighted(w, MonomialOrder::canonical(g.num_vertices).sequence());
  RealizeReport<S> rep;
  rep.dominance = quadratic_part(g, ord) == edges;
  for (const auto& ce : g.color_edges) {
    for (int a : ce) {
      for (int b : ce) {
        const bool split = std::binary_search(edges.begin(), edges.end(), a) && !std::binary_search(edges.begin(), edges.end(), b);
        if (split && ord.weight(g.edge_monomial(a)) == ord.weight(g.edge_monomial(b))) rep.weight_ties = true;
      }
    }
  }
  if (!rep.dominance) return rep;
  rep.initial = buchberger(gens, ord).initial();
  rep.realized = rep.initial == edge_ideal(g, edges);
  return rep;
}

/// Curves c[0..5] and h[1..5] (h[0] unused): the h_i are pairwise disjoint, h_i meets
/// c_i and c_0 and no other c, and the c_i h_i (i >= 1) are the sections of one conic.
struct ConfigWitness {
  int conic = -1;  // color index
  std::array<int, 6> c{};
  std::array<int, 6> h{};
};

bool is_triangle(const CurveGraph& g, const std::array<int, 3>& triple);
/// Searches configurations avoiding the triple; none exists exactly for triangles.
std::optional<ConfigWitness> config_witness(const CurveGraph& g, const std::array<int, 3>& triple);
/// Checks the defining conditions of a witness directly.
bool check_config_witness(const CurveGraph& g, const std::array<int, 3>& triple, const ConfigWitness& w);

struct ObstructionVerdict {
  bool triangle = false;                 // no certificate; left to the weight feasibility check
  std::optional<ConfigWitness> witness;
  std::vector<int> independent;          // vertices spanning no edge of the candidate
  int codimension_bound = -1;            // number of vertices minus the independent set size
};

/// For an edge set missing the triple's vertices: a 10-vertex independent set bounding its
/// codimension by 17, via the configuration of the triple.
ObstructionVerdict small_candidate_obstruction(const CurveGraph& g, const EdgeSet& edges,
                                               const std::array<int, 3>& omitted);

/// Graphviz text; chosen edges are drawn bold.
std::string to_dot(const CurveGraph& g, const EdgeSet& chosen = {});

}  // namespace coxlab
