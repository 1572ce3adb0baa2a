#include "coxlab/curvegraph.hpp"
#include "coxlab/geometry.hpp"
#include "coxlab/tables.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace coxlab;

namespace {

using F = Fp32003;

std::vector<PlanePoint<F>> random_general(int r, std::mt19937_64& rng) {
  while (true) {
    std::vector<PlanePoint<F>> pts;
    for (int i = 0; i < r; ++i) {
      pts.push_back({F(static_cast<long>(rng() % 30000)), F(static_cast<long>(rng() % 30000)), F(1)});
    }
    if (check_general_position(pts).ok) return pts;
  }
}

std::array<int, 3> triple(const CoxRing& ring, const char* a, const char* b, const char* c) {
  return {ring.index(a), ring.index(b), ring.index(c)};
}

// Up to k edges per color, drawn at random among those avoiding the vertices in mask.
EdgeSet random_avoiding(const CurveGraph& g, std::uint32_t avoid, std::size_t k, std::mt19937_64& rng) {
  EdgeSet out;
  for (const auto& ce : g.color_edges) {
    std::vector<int> ok;
    for (int e : ce) {
      const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
      if (!(avoid >> u & 1u) && !(avoid >> v & 1u)) ok.push_back(e);
    }
    std::shuffle(ok.begin(), ok.end(), rng);
    for (std::size_t i = 0; i < std::min(k, ok.size()); ++i) out.push_back(ok[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("graphs of exceptional curves") {
  const CurveGraph g4 = build_graph(4);
  CHECK(g4.num_vertices == 10);
  CHECK(g4.edges.size() == 15);
  CHECK(g4.colors.size() == 5);
  for (int v = 0; v < 10; ++v) CHECK(std::popcount(g4.neighbours[static_cast<std::size_t>(v)]) == 3);
  // Petersen: no triangles or 4-cycles, so two vertices share at most one neighbour.
  for (int u = 0; u < 10; ++u) {
    for (int v = u + 1; v < 10; ++v) {
      CHECK(std::popcount(g4.neighbours[static_cast<std::size_t>(u)] & g4.neighbours[static_cast<std::size_t>(v)]) ==
            (g4.adjacent(u, v) ? 0 : 1));
    }
  }
  const CurveGraph g5 = build_graph(5);
  CHECK(g5.num_vertices == 16);
  CHECK(g5.edges.size() == 40);
  const CurveGraph g6 = build_graph(6);
  CHECK(g6.num_vertices == 27);
  for (int v = 0; v < 27; ++v) CHECK(std::popcount(g6.neighbours[static_cast<std::size_t>(v)]) == 10);
  for (const CurveGraph* g : {&g4, &g5, &g6}) {
    for (const auto& ce : g->color_edges) {
      CHECK(static_cast<int>(ce.size()) == g->r - 1);
      // Sections of one conic are pairwise disjoint.
      for (std::size_t i = 0; i < ce.size(); ++i) {
        for (std::size_t j = i + 1; j < ce.size(); ++j) {
          const auto [a, b] = g->edges[static_cast<std::size_t>(ce[i])];
          const auto [c, d] = g->edges[static_cast<std::size_t>(ce[j])];
          CHECK(std::set<int>{a, b, c, d}.size() == 4);
        }
      }
    }
    CHECK(g->edge_index(g->edges[3].second, g->edges[3].first) == 3);
  }
  CHECK(g6.edge_index(0, 1) == -1);  // e1, e2 are disjoint

  // Group elements permute colors, and do so transitively.
  const auto perms = edge_permutations(g5, weyl_group(5).elements());
  std::set<int> reached;
  for (const auto& p : perms) {
    for (std::size_t c = 0; c < g5.color_edges.size(); ++c) {
      std::set<int> image;
      for (int e : g5.color_edges[c]) image.insert(g5.edge_color[static_cast<std::size_t>(p[static_cast<std::size_t>(e)])]);
      CHECK(image.size() == 1);
      if (c == 0) reached.insert(*image.begin());
    }
  }
  CHECK(reached.size() == g5.colors.size());
}

TEST_CASE("selections and the r=4 filter") {
  CHECK(raw_candidate_count(4) == 243);
  CHECK(raw_candidate_count(5) == 60466176);
  const CurveGraph g4 = build_graph(4);
  const auto& tables = reference_tables();
  const auto m4 = edges_of(g4, tables.initial_ideal(4));
  REQUIRE(m4.has_value());
  CHECK(is_selection(g4, *m4));

  std::vector<EdgeSet> all;
  for_each_selection(g4, [&](const EdgeSet& s) { all.push_back(s); });
  CHECK(all.size() == 243);
  CHECK(std::all_of(all.begin(), all.end(), [&](const EdgeSet& s) { return is_selection(g4, s); }));
  std::sort(all.begin(), all.end());
  const auto kept = filter_candidates(g4, all);
  CHECK(std::find(kept.begin(), kept.end(), *m4) != kept.end());
  // Survivors form whole orbits, and M_4's orbit size matches its stabiliser.
  const auto perms = edge_permutations(g4, weyl_group(4).elements());
  for (const EdgeSet& s : kept) {
    for (std::size_t k = 0; k < perms.size(); k += 17) {
      const EdgeSet img = act_on_edges(perms[k], s);
      CHECK(std::binary_search(kept.begin(), kept.end(), img));
    }
  }
  std::set<EdgeSet> orbit;
  int stabiliser = 0;
  for (const auto& p : perms) {
    const EdgeSet img = act_on_edges(p, *m4);
    orbit.insert(img);
    stabiliser += img == *m4;
  }
  CHECK(orbit.size() * static_cast<std::size_t>(stabiliser) == 120);
  const auto classes = orbit_classes(kept, perms);
  std::size_t covered = 0;
  for (const EdgeSet& c : classes) {
    std::set<EdgeSet> o;
    for (const auto& p : perms) o.insert(act_on_edges(p, c));
    covered += o.size();
  }
  CHECK(covered == kept.size());

  // A trivial group leaves selections alone.
  const std::vector<std::vector<int>> identity{perms[0]};
  CHECK(orbit_classes(kept, identity) == kept);

  // Everything sits on a single color edge: not a selection, and not invariant.
  CHECK_FALSE(is_selection(g4, {0}));
  CHECK_FALSE(edges_of(g4, MonomialIdeal({cox_ring(4).parse_monomial("e1*e2")})).has_value());
}

TEST_CASE("r=5 selections") {
  const CurveGraph g = build_graph(5);
  const auto& tables = reference_tables();
  const auto m5 = edges_of(g, tables.initial_ideal(5));
  REQUIRE(m5.has_value());
  CHECK(m5->size() == 20);
  CHECK(is_selection(g, *m5));
  const FilterReport rep = filter_candidate(g, *m5);
  CHECK(rep.passes());
  CHECK(quadratic_part(g, tables.order(5)) == *m5);

  // Both chosen edges of every color meet e1's neighbourhood: the same vertex cover everywhere.
  const CoxRing& ring = cox_ring(5);
  EdgeSet crowded;
  for (const auto& ce : g.color_edges) {
    std::vector<int> sorted = ce;
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
      auto touches = [&](int e) {
        const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
        return u == ring.index("e1") || v == ring.index("e1") || u == ring.index("e2") || v == ring.index("e2");
      };
      return touches(a) > touches(b);
    });
    crowded.push_back(sorted[0]);
    crowded.push_back(sorted[1]);
  }
  std::sort(crowded.begin(), crowded.end());
  CHECK_FALSE(filter_candidate(g, crowded).passes());

  // Canonical forms are constant on orbits.
  const auto perms = edge_permutations(g, weyl_group(5).elements());
  std::mt19937_64 rng(9);
  const EdgeSet canon = canonical_form(*m5, perms);
  for (int k = 0; k < 10; ++k) CHECK(canonical_form(act_on_edges(perms[rng() % perms.size()], *m5), perms) == canon);
}

TEST_CASE("pruned r=5 search") {
  const CurveGraph g = build_graph(5);
  std::mt19937_64 rng(17);
  const auto pts = random_general(5, rng);
  const auto real = realize(pts);
  const auto targets =
      hilbert_targets(g, [&](const DivisorClass& d) { return static_cast<std::int64_t>(section_rank(real, d)); }, 4);
  // The targets are the Hilbert function of a known initial ideal.
  const CoxRing& ring = cox_ring(5);
  const MonomialIdeal m5 = reference_tables().initial_ideal(5);
  for (const DegreeTarget& t : targets) CHECK(t.target == hilbert_at(ring, m5, t.degree));

  const SearchResult res = search_selections(g, targets, 2);
  const auto m5_edges = *edges_of(g, m5);
  CHECK(std::binary_search(res.selections.begin(), res.selections.end(), m5_edges));
  CHECK(res.selections.size() < raw_candidate_count(5) / 100);
  // The worker count does not change the answer.
  CHECK(search_selections(g, targets, 1).selections == res.selections);
  // The surviving set is group-stable.
  const auto perms = edge_permutations(g, weyl_group(5).elements());
  for (int k = 0; k < 50; ++k) {
    const EdgeSet& s = res.selections[rng() % res.selections.size()];
    CHECK(std::binary_search(res.selections.begin(), res.selections.end(), act_on_edges(perms[rng() % perms.size()], s)));
  }
  // Each survivor meets the targets, checked without masks.
  for (int k = 0; k < 20; ++k) {
    const EdgeSet& s = res.selections[rng() % res.selections.size()];
    const MonomialIdeal n = edge_ideal(g, s);
    for (std::size_t t = 0; t < targets.size(); t += 7) CHECK(hilbert_at(ring, n, targets[t].degree) == targets[t].target);
  }
  const auto classes = orbit_classes(res.selections, perms);
  CHECK(classes.size() == 55);
  // The binomial count filter does not depend on the orbit representative.
  for (const EdgeSet& c : classes) {
    const bool expected = filter_candidate(g, c).binomial_counts;
    for (int k = 0; k < 3; ++k) {
      CHECK(filter_candidate(g, act_on_edges(perms[rng() % perms.size()], c)).binomial_counts == expected);
    }
  }
}

TEST_CASE("weights selecting edges") {
  const CurveGraph g = build_graph(5);
  const auto m5 = *edges_of(g, reference_tables().initial_ideal(5));
  const WeightFeasibility wf = selection_weights(g, m5);
  REQUIRE(wf.feasible);
  CHECK(wf.verified);
  CHECK(*std::min_element(wf.weights.begin(), wf.weights.end()) == 1);
  const MonomialOrder ord = MonomialOrder::weighted(wf.weights, MonomialOrder::canonical(16).sequence());
  CHECK(quadratic_part(g, ord) == m5);

  std::mt19937_64 rng(3);
  const auto gens = build_qr(random_general(5, rng));
  const auto rep = realize_by_weight(g, m5, wf.weights, gens);
  CHECK(rep.dominance);
  CHECK_FALSE(rep.weight_ties);
  CHECK(rep.realized);
  // Uniform weights tie everything and leave the choice to revlex.
  const auto flat = realize_by_weight(g, m5, std::vector<std::int64_t>(16, 1), gens);
  CHECK(flat.weight_ties);

  // Random selections: any feasible answer reproduces the selection; infeasible ones are certified.
  int infeasible = 0;
  for (int trial = 0; trial < 30; ++trial) {
    EdgeSet s;
    for (const auto& ce : g.color_edges) {
      std::vector<int> c = ce;
      std::shuffle(c.begin(), c.end(), rng);
      s.push_back(c[0]);
      s.push_back(c[1]);
    }
    std::sort(s.begin(), s.end());
    const WeightFeasibility f = selection_weights(g, s);
    CHECK(f.verified);
    if (f.feasible) {
      CHECK(quadratic_part(g, MonomialOrder::weighted(f.weights, MonomialOrder::canonical(16).sequence())) == s);
    } else {
      ++infeasible;
    }
  }
  CHECK(infeasible > 0);
}

TEST_CASE("configurations for triples of lines") {
  const CurveGraph g = build_graph(6);
  const CoxRing& ring = cox_ring(6);
  int triangles = 0;
  int witnessed = 0;
  for (int a = 0; a < 27; ++a) {
    for (int b = a + 1; b < 27; ++b) {
      for (int c = b + 1; c < 27; ++c) {
        const std::array<int, 3> t{a, b, c};
        const auto w = config_witness(g, t);
        // Pairwise intersection numbers decide the triangle case independently.
        const auto& cv = ring.curves();
        const bool tri = intersect(cv[static_cast<std::size_t>(a)].cls, cv[static_cast<std::size_t>(b)].cls) == 1 &&
                         intersect(cv[static_cast<std::size_t>(a)].cls, cv[static_cast<std::size_t>(c)].cls) == 1 &&
                         intersect(cv[static_cast<std::size_t>(b)].cls, cv[static_cast<std::size_t>(c)].cls) == 1;
        triangles += tri;
        CHECK(w.has_value() == !tri);
        if (w) {
          ++witnessed;
          CHECK(check_config_witness(g, t, *w));
        }
      }
    }
  }
  CHECK(triangles + witnessed == 2925);
  CHECK(triangles == 45);  // tritangent planes of the cubic surface

  CHECK(config_witness(g, triple(ring, "f23", "f24", "f25")).has_value());
  CHECK(config_witness(g, triple(ring, "f23", "f46", "f45")).has_value());
  CHECK(config_witness(g, triple(ring, "f23", "f46", "g1")).has_value());
  CHECK(is_triangle(g, triple(ring, "e1", "f12", "g2")));
  CHECK_THROWS(config_witness(build_graph(5), {0, 1, 2}));

  // The standard configuration passes the direct check; breaking it fails.
  ConfigWitness std_w;
  std_w.conic = g.edge_color[static_cast<std::size_t>(g.edge_index(ring.index("e2"), ring.index("f12")))];
  std_w.c[0] = ring.index("e1");
  for (int i = 1; i <= 5; ++i) {
    std_w.c[static_cast<std::size_t>(i)] = ring.index("e" + std::to_string(i + 1));
    std_w.h[static_cast<std::size_t>(i)] = ring.index("f1" + std::to_string(i + 1));
  }
  const auto away = triple(ring, "f23", "f24", "f25");
  CHECK(check_config_witness(g, away, std_w));
  ConfigWitness broken = std_w;
  std::swap(broken.h[1], broken.h[2]);
  CHECK_FALSE(check_config_witness(g, away, broken));
  CHECK_FALSE(check_config_witness(g, triple(ring, "e3", "f24", "f25"), std_w));
}

TEST_CASE("small candidates are obstructed") {
  const CurveGraph g = build_graph(6);
  const CoxRing& ring = cox_ring(6);
  std::mt19937_64 rng(6);
  const auto away = triple(ring, "f23", "f24", "f25");
  const std::uint32_t mask = 1u << away[0] | 1u << away[1] | 1u << away[2];
  for (int trial = 0; trial < 8; ++trial) {
    const EdgeSet n = random_avoiding(g, mask, 3, rng);
    const ObstructionVerdict v = small_candidate_obstruction(g, n, away);
    CHECK_FALSE(v.triangle);
    REQUIRE(v.witness.has_value());
    REQUIRE(v.independent.size() == 10);
    CHECK(v.codimension_bound == 17);
    const MonomialIdeal ideal = edge_ideal(g, n);
    std::uint32_t set = 0;
    for (int x : v.independent) set |= 1u << x;
    for (const Monomial& m : ideal.generators()) CHECK((m.support_mask() & ~set) != 0);
    CHECK(codimension(ring, ideal) <= 17);
  }
  // An omitted triangle gets no certificate.
  const auto tri = triple(ring, "e1", "f12", "g2");
  const std::uint32_t tmask = 1u << tri[0] | 1u << tri[1] | 1u << tri[2];
  const ObstructionVerdict t = small_candidate_obstruction(g, random_avoiding(g, tmask, 3, rng), tri);
  CHECK(t.triangle);
  CHECK(t.independent.empty());
  CHECK(t.codimension_bound == -1);
  CHECK_THROWS(small_candidate_obstruction(g, {g.edge_index(away[0], ring.index("e2"))}, away));
}

TEST_CASE("graphviz output") {
  const CurveGraph g = build_graph(4);
  const std::string dot = to_dot(g, {0});
  CHECK(dot.rfind("graph L4 {", 0) == 0);
  std::size_t edges = 0;
  for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++edges;
  CHECK(edges == 15);
  CHECK(dot.find("style=bold") != std::string::npos);
}
