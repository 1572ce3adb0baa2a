#include "coxlab/tables.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace coxlab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Non-empty lines with comments removed.
std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

const std::string& source(const TableSources& sources, const std::string& key) {
  const auto it = sources.find(key);
  if (it == sources.end()) throw std::invalid_argument("missing table source: " + key);
  return it->second;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer: " + std::string(s));
  return v;
}

// Rows "label: tok tok | tok"; tokens may carry "=weight".
Table parse_table(const std::string& name, int r, std::string_view text, bool weighted) {
  const CoxRing& ring = cox_ring(r);
  Table table{name, r, {}};
  for (const std::string& line : content_lines(text)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument(name + ": row without label: " + line);
    TableRow row;
    row.label = trim(std::string_view(line).substr(0, colon));
    try {
      row.degree = DivisorClass::parse(row.label, r);
    } catch (const std::exception& e) {
      row.issues.push_back("label does not parse: " + row.label);
    }
    std::istringstream in(line.substr(colon + 1));
    std::string tok;
    bool seen_bar = false;
    while (in >> tok) {
      if (tok == "|") {
        seen_bar = true;
        continue;
      }
      if (weighted) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument(name + ": missing weight on " + tok);
        row.weights.push_back(parse_int(std::string_view(tok).substr(eq + 1)));
        tok.resize(eq);
      }
      row.tokens.push_back(tok);
      if (!seen_bar) ++row.lead_count;
      try {
        row.monomials.emplace_back(ring.parse_monomial(tok));
      } catch (const std::exception&) {
        row.monomials.emplace_back(std::nullopt);
        row.issues.push_back("token does not parse: " + tok);
      }
    }
    if (!seen_bar) row.lead_count = row.tokens.size();
    if (row.degree) {
      for (std::size_t k = 0; k < row.tokens.size(); ++k) {
        if (!row.monomials[k]) continue;
        const DivisorClass d = ring.pic_degree(*row.monomials[k]);
        if (d != *row.degree) {
          row.issues.push_back("degree of " + row.tokens[k] + " is " + d.str() + ", not " + row.label);
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void check_decreasing(Table& t, const MonomialOrder& ord) {
  const CoxRing& ring = cox_ring(t.r);
  for (TableRow& row : t.rows) {
    for (std::size_t k = 0; k + 1 < row.monomials.size(); ++k) {
      const auto& a = row.monomials[k];
      const auto& b = row.monomials[k + 1];
      if (a && b && !ord.less(*b, *a)) {
        row.notes.push_back("not decreasing: " + ring.format(*a) + " before " + ring.format(*b));
      }
    }
  }
}

void note_repeated_degrees(Table& t, std::vector<std::string>& log) {
  std::map<std::string, std::size_t> first;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto [it, fresh] = first.emplace(t.rows[i].label, i);
    if (!fresh) {
      t.rows[i].notes.push_back("repeats the degree of row " + std::to_string(it->second + 1));
      log.push_back(t.name + " row " + std::to_string(i + 1) + " repeats degree " + t.rows[i].label + " of row " +
                    std::to_string(it->second + 1));
    }
  }
}

void log_table(const Table& t, std::vector<std::string>& log) {
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const TableRow& row = t.rows[i];
    for (const auto& issue : row.issues) {
      log.push_back(t.name + " row " + std::to_string(i + 1) + " quarantined: " + issue);
    }
    for (const auto& note : row.notes) {
      if (note.starts_with("repeats")) continue;
      log.push_back(t.name + " row " + std::to_string(i + 1) + ": " + note);
    }
  }
}

}  // namespace

std::optional<DivisorClass> TableRow::monomial_degree(const CoxRing& ring) const {
  std::optional<DivisorClass> d;
  for (const auto& m : monomials) {
    if (!m) continue;
    const DivisorClass dm = ring.pic_degree(*m);
    if (d && *d != dm) return std::nullopt;
    d = dm;
  }
  return d;
}

std::vector<Monomial> TableRow::parsed() const {
  std::vector<Monomial> out;
  for (const auto& m : monomials) {
    if (m) out.push_back(*m);
  }
  return out;
}

std::vector<Monomial> Table::lead_monomials() const {
  std::vector<Monomial> out;
  for (const TableRow& row : rows) {
    for (std::size_t k = 0; k < row.lead_count; ++k) {
      if (!row.monomials[k]) throw std::invalid_argument(name + ": unparsed lead monomial " + row.tokens[k]);
      out.push_back(*row.monomials[k]);
    }
  }
  return out;
}

std::size_t Table::quarantined_count() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.quarantined() ? 1 : 0;
  return n;
}

MonomialOrder ReferenceTables::order(int r) const {
  const auto it = order_specs.find("r" + std::to_string(r));
  if (it == order_specs.end()) throw std::invalid_argument("no reference order for r=" + std::to_string(r));
  return MonomialOrder::parse(it->second, cox_ring(r));
}

MonomialIdeal ReferenceTables::initial_ideal(int r) const {
  switch (r) {
    case 4:
      return MonomialIdeal(m4);
    case 5:
      return MonomialIdeal(m5.lead_monomials());
    case 6: {
      std::vector<Monomial> gens = t1.lead_monomials();
      for (const auto& m : t2.lead_monomials()) gens.push_back(m);
      for (const auto& m : t3.lead_monomials()) gens.push_back(m);
      return MonomialIdeal(gens);
    }
    default:
      throw std::invalid_argument("no reference initial ideal for r=" + std::to_string(r));
  }
}

std::vector<std::int64_t> ReferenceTables::t4_weights(std::size_t row) const {
  const CoxRing& ring = cox_ring(5);
  std::vector<std::int64_t> w(static_cast<std::size_t>(ring.num_variables()), 0);
  for (std::size_t k = 0; k < t4_variables.size(); ++k) {
    w[static_cast<std::size_t>(ring.index(t4_variables[k]))] = t4.at(row)[k];
  }
  return w;
}

ReferenceTables load_tables(const TableSources& sources) {
  ReferenceTables t;
  for (const std::string& line : content_lines(source(sources, "orders"))) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("orders: expected name = spec");
    t.order_specs[trim(std::string_view(line).substr(0, eq))] = trim(std::string_view(line).substr(eq + 1));
  }
  for (int r = 4; r <= 6; ++r) t.order(r);  // validates the specs

  for (const std::string& line : content_lines(source(sources, "m4"))) t.m4.push_back(cox_ring(4).parse_monomial(line));

  t.m5 = parse_table("m5", 5, source(sources, "m5"), true);
  const MonomialOrder o5 = t.order(5);
  for (TableRow& row : t.m5.rows) {
    for (std::size_t k = 0; k < row.tokens.size(); ++k) {
      if (row.monomials[k] && o5.weight(*row.monomials[k]) != row.weights[k]) {
        row.notes.push_back("listed weight of " + row.tokens[k] + " is " + std::to_string(row.weights[k]) +
                            ", order gives " + std::to_string(o5.weight(*row.monomials[k])));
      }
    }
  }
  check_decreasing(t.m5, o5);

  const MonomialOrder o6 = t.order(6);
  t.t1 = parse_table("t1", 6, source(sources, "t1"), false);
  t.t2 = parse_table("t2", 6, source(sources, "t2"), false);
  t.t3 = parse_table("t3", 6, source(sources, "t3"), false);
  t.ugly1 = parse_table("ugly1", 6, source(sources, "ugly1"), false);
  for (Table* tab : {&t.t1, &t.t2, &t.t3}) check_decreasing(*tab, o6);
  note_repeated_degrees(t.t2, t.log);

  const auto t4_lines = content_lines(source(sources, "t4"));
  if (t4_lines.empty()) throw std::invalid_argument("t4: missing header");
  {
    std::istringstream in(t4_lines[0]);
    std::string v;
    while (in >> v) {
      cox_ring(5).index(v);
      t.t4_variables.push_back(v);
    }
  }
  for (std::size_t i = 1; i < t4_lines.size(); ++i) {
    std::istringstream in(t4_lines[i]);
    std::string v;
    std::vector<std::int64_t> row;
    while (in >> v) row.push_back(parse_int(v));
    if (row.size() != t.t4_variables.size()) {
      throw std::invalid_argument("t4 row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries");
    }
    t.t4.push_back(std::move(row));
  }

  for (const Table* tab : {&t.m5, &t.t1, &t.t2, &t.t3, &t.ugly1}) log_table(*tab, t.log);
  std::size_t t1_lead = 0;
  for (const auto& row : t.t1.rows) t1_lead += row.lead_count;
  t.log.push_back("t1 supplies " + std::to_string(t1_lead) + " quadratic generators from the first " +
                  std::to_string(t.t1.rows.empty() ? 0 : t.t1.rows[0].lead_count) + " columns");
  return t;
}

const ReferenceTables& reference_tables() {
  static const ReferenceTables tables = load_tables(embedded_table_sources());
  return tables;
}

std::string emit_tables(const TableSources& sources) {
  const ReferenceTables t = load_tables(sources);
  std::ostringstream out;
  for (const auto& [name, text] : sources) {
    out << "## " << name << "\n" << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
  out << "## log\n";
  for (const auto& line : t.log) out << line << "\n";
  return out.str();
}

}  // namespace coxlab
