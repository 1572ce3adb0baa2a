// coxlab: command line front end of the library.

#include "coxlab/lab.hpp"
#include "coxlab/symmetry.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace coxlab;
using json = nlohmann::json;

struct Global {
  std::string field = "auto";
  std::uint64_t seed = 1;
  bool json_out = false;
  int workers = 1;
  bool emit_tables = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<PlanePoint<Rational>> read_points(const std::string& path) { return parse_points(json::parse(read_file(path))); }

template <class S>
std::vector<PlanePoint<S>> convert(const std::vector<PlanePoint<Rational>>& pts) {
  std::vector<PlanePoint<S>> out;
  for (const auto& p : pts) out.push_back({S(p[0]), S(p[1]), S(p[2])});
  return out;
}

template <>
std::vector<PlanePoint<Rational>> convert<Rational>(const std::vector<PlanePoint<Rational>>& pts) {
  return pts;
}

/// Runs fn.template operator()<S>() in the chosen field.
template <class F>
void in_field(const std::string& field, F&& fn) {
  if (field == "auto" || field == "QQ") fn.template operator()<Rational>();
  else if (field == "32003") fn.template operator()<Fp32003>();
  else if (field == "65521") fn.template operator()<Fp65521>();
  else throw CLI::ValidationError("--field", "expected QQ, 32003 or 65521");
}

/// Smallest r whose variables cover every name in the lines.
template <class Parse>
int infer_rank(const std::vector<std::string>& lines, Parse&& parse) {
  for (int r = 4; r <= 6; ++r) {
    try {
      for (const auto& l : lines) parse(cox_ring(r), l);
      return r;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::invalid_argument("the input uses variables outside every supported ring");
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

json class_json(const std::string& label, const DivisorClass& d) {
  json coeffs = json::array();
  for (int k = 0; k <= d.r(); ++k) coeffs.push_back(d[k]);
  return json{{"label", label}, {"coeffs", coeffs}};
}

int cmd_classify(const Global& g, int r) {
  const CurveSet curves = enumerate_exceptional(r);
  const auto conics = enumerate_conics(r);
  if (g.json_out) {
    json c = json::array(), q = json::array();
    for (const Curve& x : curves) c.push_back(class_json(x.label, x.cls));
    for (const DivisorClass& d : conics) q.push_back(class_json(d.str(), d));
    std::cout << json{{"r", r}, {"curves", c}, {"conics", q}}.dump(2) << "\n";
    return 0;
  }
  std::cout << curves.size() << " exceptional curves\n";
  for (const Curve& x : curves) std::cout << "  " << x.label << "\t" << x.cls.vector_str() << "\t" << x.cls.str() << "\n";
  std::cout << conics.size() << " conics\n";
  for (const DivisorClass& d : conics) std::cout << "  " << d.vector_str() << "\t" << d.str() << "\n";
  return 0;
}

int cmd_weyl(const Global& g, int r, bool order_only) {
  const WeylGroup& w = weyl_group(r);
  if (order_only && !g.json_out) {
    std::cout << w.order() << "\n";
    return 0;
  }
  const CurveSet& curves = w.curves();
  std::vector<DivisorClass> curve_classes;
  for (const Curve& c : curves) curve_classes.push_back(c.cls);
  const auto curve_orbits = orbits(w.generators(), curve_classes);
  const auto conic_orbits = orbits(w.generators(), enumerate_conics(r));
  if (g.json_out) {
    std::cout << json{{"r", r},
                      {"order", w.order()},
                      {"generators", w.generators().size()},
                      {"curve_orbits", curve_orbits.size()},
                      {"conic_orbits", conic_orbits.size()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "order " << w.order() << "\ngenerators " << w.generators().size() << "\norbits on curves "
              << curve_orbits.size() << "\norbits on conics " << conic_orbits.size() << "\n";
  }
  return 0;
}

int cmd_build_qr(const Global& g, int r, const std::string& points_file, const std::string& manifest) {
  const auto pts = read_points(points_file);
  if (static_cast<int>(pts.size()) != r) throw std::invalid_argument("the points file must list exactly r points");
  in_field(g.field, [&]<class S>() {
    const auto real = realize(convert<S>(pts));
    const CoxRing& ring = cox_ring(r);
    json blocks = json::array();
    for (const auto& b : build_qr_blocks(real)) {
      json rels = json::array();
      for (const auto& f : b.relations) {
        rels.push_back(format(ring, f));
        if (!g.json_out) std::cout << format(ring, f) << "\n";
      }
      blocks.push_back({{"conic_class", b.conic.vector_str()}, {"relations", rels}});
    }
    const json doc{{"r", r}, {"field", S::field_name()}, {"blocks", blocks}};
    if (g.json_out) std::cout << doc.dump(2) << "\n";
    if (!manifest.empty()) std::ofstream(manifest) << doc.dump(2) << "\n";
  });
  return 0;
}

int cmd_gb(const Global& g, int r, const std::string& ideal_file, const std::string& order_spec) {
  const auto lines = content_lines(read_file(ideal_file));
  if (lines.empty()) throw std::invalid_argument("the ideal file lists no polynomials");
  in_field(g.field, [&]<class S>() {
    const int rank = r > 0 ? r : infer_rank(lines, [](const CoxRing& ring, const std::string& l) {
      return parse_polynomial<S>(ring, l);
    });
    const CoxRing& ring = cox_ring(rank);
    std::vector<Polynomial<S>> gens;
    for (const auto& l : lines) gens.push_back(parse_polynomial<S>(ring, l));
    const MonomialOrder ord = MonomialOrder::parse(order_spec, ring);
    BuchbergerStats stats;
    const auto gb = buchberger(gens, ord, &stats);
    if (g.json_out) {
      json basis = json::array(), initial = json::array();
      for (const auto& f : gb.basis) basis.push_back(format(ring, f));
      for (const auto& m : gb.leading_monomials()) initial.push_back(ring.format(m));
      std::cout << json{{"r", rank},
                        {"field", S::field_name()},
                        {"order", ord.spec(ring)},
                        {"basis", basis},
                        {"initial", initial},
                        {"max_degree", gb.max_degree()},
                        {"pairs", stats.pairs_considered}}
                       .dump(2)
                << "\n";
    } else {
      for (const auto& f : gb.basis) std::cout << format(ring, f) << "\n";
    }
  });
  return 0;
}

int cmd_hilbert(const Global& g, int r, const std::string& file, const std::string& degree, bool kpoly) {
  const std::string text = read_file(file);
  const int rank = r > 0 ? r : [&] {
    std::vector<std::string> probe{text};
    return infer_rank(probe, [](const CoxRing& ring, const std::string& t) { return parse_monomial_ideal(ring, t); });
  }();
  const CoxRing& ring = cox_ring(rank);
  const MonomialIdeal m = parse_monomial_ideal(ring, text);
  if (kpoly == !degree.empty()) throw CLI::ValidationError("hilbert", "give exactly one of --degree and --kpoly");
  if (kpoly) {
    const KPolynomial k = k_polynomial(ring, m);
    if (g.json_out) {
      json terms = json::array();
      for (const auto& [d, c] : k) terms.push_back({{"degree", d.vector_str()}, {"coefficient", c}});
      std::cout << json{{"r", rank}, {"terms", terms}}.dump(2) << "\n";
    } else {
      std::cout << format_kpolynomial(k) << "\n";
    }
    return 0;
  }
  const DivisorClass d = DivisorClass::parse(degree, rank);
  const auto h = hilbert_at(ring, m, d);
  if (g.json_out) std::cout << json{{"r", rank}, {"degree", d.vector_str()}, {"value", h}}.dump(2) << "\n";
  else std::cout << h << "\n";
  return 0;
}

std::string element_name(const WeylGroup& w, std::size_t i) { return "generator " + std::to_string(i + 1) + "/" + std::to_string(w.generators().size()); }

int cmd_symmetry(const Global& g, int r, const std::string& check, const std::string& points_file, int weights) {
  const ReferenceTables& tables = reference_tables();
  const CoxRing& ring = cox_ring(r);
  const WeylGroup& w = weyl_group(r);
  VerificationReport rep;
  rep.lemma = "symmetry-" + check;
  rep.configuration["r"] = r;
  if (check == "hs") {
    const MonomialIdeal m = tables.initial_ideal(r);
    rep.add("Hilbert series of M_r is W_r-invariant", hs_invariant(ring, m, w.generators()));
  } else {
    std::vector<PlanePoint<Rational>> pts =
        points_file.empty() ? (r == 4 ? standard_points<Rational>() : sample_points<Rational>(r, g.seed, {.general_position = true, .no_eckart = r == 6}))
                            : read_points(points_file);
    json pj = json::array();
    for (const auto& p : pts) pj.push_back(format_point(p));
    rep.configuration["points"] = pj;
    rep.configuration["seed"] = g.seed;
    in_field(g.field, [&]<class S>() {
      rep.configuration["field"] = S::field_name();
      const auto gens = build_qr(convert<S>(pts));
      const MonomialOrder ord = tables.order(r);
      if (check == "monomial") {
        const auto provider = pieces_of_generators(ring, gens);
        const auto basis = buchberger(gens, ord).basis;
        for (std::size_t i = 0; i < w.generators().size(); ++i) {
          json missing = json::array();
          for (const auto& f : basis) {
            if (!monomial_action_witness(ring, provider, w.generators()[i], f).found()) missing.push_back(format(ring, f));
          }
          rep.add(element_name(w, i) + " maps every basis element to a relation with the moved support", missing.empty(),
                  {}, missing);
        }
      } else if (check == "twist") {
        for (std::size_t i = 0; i < w.generators().size(); ++i) {
          const auto t = twisted_initial_check(ring, gens, ord, w.generators()[i]);
          rep.add(element_name(w, i) + ": g(in(Q)) equals the initial ideal under the twisted order", t.equal());
        }
      } else if (check == "cone") {
        std::mt19937_64 rng(g.seed);
        for (int k = 0; k < weights; ++k) {
          std::vector<std::int64_t> wt(static_cast<std::size_t>(ring.num_variables()));
          for (auto& x : wt) x = static_cast<std::int64_t>(rng() % 1000) + 1;
          for (std::size_t i = 0; i < w.generators().size(); ++i) {
            const auto c = groebner_cone_spotcheck(ring, gens, wt, w.generators()[i]);
            rep.add("weight " + std::to_string(k + 1) + ", " + element_name(w, i) + ": cones permuted", c.holds(),
                    c.generic ? "" : "weight not generic", json(wt));
          }
        }
      } else {
        throw CLI::ValidationError("--check", "expected hs, monomial, twist or cone");
      }
    });
  }
  std::cout << (g.json_out ? rep.to_json().dump(2) + "\n" : rep.summary());
  return rep.passed() ? 0 : 1;
}

int cmd_search(const Global& g, const std::string& what, int r) {
  if (what != "quadratic-gb") throw CLI::ValidationError("search", "the only search is quadratic-gb");
  const QuadraticSearch s = quadratic_search(r, g.seed, g.workers, reference_tables());
  if (g.json_out) {
    std::cout << to_json(s).dump(2) << "\n";
    return 0;
  }
  const CurveGraph graph = build_graph(r);
  const CoxRing& ring = cox_ring(r);
  std::cout << "hilbert targets " << s.targets << ", search nodes " << s.nodes << ", leaves " << s.leaves << "\n"
            << s.classes.size() << " orbit classes, " << s.realized_count() << " realized\n";
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    const auto& c = s.classes[i];
    if (!c.realized) continue;
    std::cout << "class " << i << " (orbit " << c.orbit_size << (c.filter.omits_variable ? "" : ", all variables")
              << (s.reference_class == i ? ", tabulated" : "") << ")\n  edges:";
    for (int e : c.representative) std::cout << " " << ring.format(graph.edge_monomial(e));
    std::cout << "\n  weights:";
    for (auto x : c.weights.weights) std::cout << " " << x;
    std::cout << "\n";
  }
  return 0;
}

int cmd_verify(const Global& g, const std::vector<std::string>& ids, const std::string& points_file, int samples, int r) {
  VerifyParams p;
  p.seed = g.seed;
  p.field = g.field;
  p.samples = samples;
  p.workers = g.workers;
  p.r = r;
  if (!points_file.empty()) p.points = read_points(points_file);
  std::vector<std::string> run = ids;
  if (run.size() == 1 && run.front() == "all") run = verifier_ids();
  const auto known = verifier_ids();
  for (const auto& id : run) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw CLI::ValidationError("verify", "unknown verifier '" + id + "'");
    }
  }
  bool ok = true;
  json reports = json::array();
  for (const auto& id : run) {
    const VerificationReport rep = verify(id, p);
    ok = ok && rep.passed();
    if (g.json_out) reports.push_back(rep.to_json());
    else std::cout << rep.summary();
  }
  if (g.json_out) std::cout << (reports.size() == 1 ? reports.front() : reports).dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_graph(const Global& g, int r, bool dot, bool highlight) {
  const CurveGraph graph = build_graph(r);
  EdgeSet chosen;
  if (highlight) {
    const auto e = edges_of(graph, reference_tables().initial_ideal(r));
    if (!e) throw std::invalid_argument("the tabulated initial ideal is not quadratic for this r");
    chosen = *e;
  }
  if (dot) {
    std::cout << to_dot(graph, chosen);
    return 0;
  }
  if (g.json_out) {
    const CoxRing& ring = cox_ring(r);
    json edges = json::array();
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      edges.push_back({{"edge", ring.format(graph.edge_monomial(static_cast<int>(e)))},
                       {"conic", graph.colors[static_cast<std::size_t>(graph.edge_color[e])].str()},
                       {"chosen", std::binary_search(chosen.begin(), chosen.end(), static_cast<int>(e))}});
    }
    std::cout << json{{"r", r}, {"vertices", graph.num_vertices}, {"edges", edges}}.dump(2) << "\n";
    return 0;
  }
  std::cout << graph.num_vertices << " vertices, " << graph.edges.size() << " edges, " << graph.colors.size()
            << " colors\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cox rings of Del Pezzo surfaces of degree 3, 4 and 5"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Global g;
  app.add_option("--field", g.field, "QQ, 32003, 65521, or auto")->check(CLI::IsMember({"auto", "QQ", "32003", "65521"}));
  app.add_option("--seed", g.seed, "seed for every random choice");
  app.add_flag("--json", g.json_out, "machine-readable output");
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--emit-tables", g.emit_tables, "print the embedded tables and the loader log");

  int r = 0;
  auto rank_option = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--r", r, "number of blown-up points")->check(CLI::Range(4, 6));
    if (required) o->required();
  };

  auto* classify = app.add_subcommand("classify", "exceptional curves and conic classes");
  rank_option(classify, true);

  bool order_only = false;
  auto* weyl = app.add_subcommand("weyl", "the Weyl group");
  rank_option(weyl, true);
  weyl->add_flag("--order", order_only, "print the group order only");

  std::string points_file, manifest;
  auto* build = app.add_subcommand("build-qr", "conic relations at a point configuration");
  rank_option(build, true);
  build->add_option("--points", points_file, "JSON list of point triples")->required()->check(CLI::ExistingFile);
  build->add_option("--manifest", manifest, "also write the JSON manifest here");

  std::string ideal_file, order_spec;
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis");
  rank_option(gb, false);
  gb->add_option("--ideal", ideal_file, "one polynomial per line")->required()->check(CLI::ExistingFile);
  gb->add_option("--order", order_spec, "revlex:... or weights:[...];tiebreak:revlex:...")->required();

  std::string mono_file, degree;
  bool kpoly = false;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function and K-polynomial of a monomial ideal");
  rank_option(hilbert, false);
  hilbert->add_option("--monomial-ideal", mono_file, "one monomial per line")->required()->check(CLI::ExistingFile);
  hilbert->add_option("--degree", degree, "\"m,a1,..,ar\"");
  hilbert->add_flag("--kpoly", kpoly, "print the K-polynomial");

  std::string check;
  int weights = 5;
  auto* symmetry = app.add_subcommand("symmetry", "Weyl group symmetry checks");
  rank_option(symmetry, true);
  symmetry->add_option("--check", check, "hs, monomial, twist or cone")
      ->required()
      ->check(CLI::IsMember({"hs", "monomial", "twist", "cone"}));
  symmetry->add_option("--points", points_file, "JSON list of point triples")->check(CLI::ExistingFile);
  symmetry->add_option("--weights", weights, "random weights for the cone check")->check(CLI::PositiveNumber);

  std::string what;
  auto* search = app.add_subcommand("search", "exhaustive quadratic initial ideal search");
  search->add_option("what", what, "quadratic-gb")->required();
  int search_r = 5;
  search->add_option("--r", search_r, "4 or 5")->check(CLI::Range(4, 5));

  std::vector<std::string> ids;
  int samples = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run verifiers; 'all' runs every one");
  verify_cmd->add_option("ids", ids, "verifier ids")->required();
  verify_cmd->add_option("--points", points_file, "JSON list of point triples")->check(CLI::ExistingFile);
  verify_cmd->add_option("--samples", samples, "override the number of sampled configurations");
  int verify_r = 0;
  verify_cmd->add_option("--r", verify_r, "bp-conjecture: restrict to one r")->check(CLI::Range(4, 6));

  bool dot = false, highlight = false;
  auto* graph = app.add_subcommand("graph", "intersection graph colored by conic classes");
  rank_option(graph, true);
  graph->add_flag("--dot", dot, "Graphviz output");
  graph->add_flag("--initial", highlight, "draw the tabulated quadratic initial ideal bold");

  const std::string verifiers = [] {
    std::string s = "verifiers:";
    for (const auto& id : verifier_ids()) s += " " + id;
    return s;
  }();
  app.footer(verifiers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (g.emit_tables) {
      std::cout << emit_tables(embedded_table_sources());
      if (app.get_subcommands().empty()) return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }
    if (*classify) return cmd_classify(g, r);
    if (*weyl) return cmd_weyl(g, r, order_only);
    if (*build) return cmd_build_qr(g, r, points_file, manifest);
    if (*gb) return cmd_gb(g, r, ideal_file, order_spec);
    if (*hilbert) return cmd_hilbert(g, r, mono_file, degree, kpoly);
    if (*symmetry) return cmd_symmetry(g, r, check, points_file, weights);
    if (*search) return cmd_search(g, what, search_r);
    if (*verify_cmd) return cmd_verify(g, ids, points_file, samples, verify_r);
    if (*graph) return cmd_graph(g, r, dot, highlight);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
