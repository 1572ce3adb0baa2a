#pragma once

// Reference tables shipped with the library: initial ideals for r = 4, 5, 6, the
// orders they refer to, and the weight vectors realizing r = 5 quadratic initial ideals.
//
// Tables are stored verbatim as text. Rows whose monomials do not parse or do not have
// the row's degree are quarantined; they are never repaired.

#include "coxlab/monomial_ideal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coxlab {

struct TableRow {
  std::string label;
  std::optional<DivisorClass> degree;  // parsed label
  std::vector<std::string> tokens;     // verbatim monomial tokens
  std::vector<std::optional<Monomial>> monomials;
  std::vector<std::int64_t> weights;  // listed weights, when the table has them
  std::size_t lead_count = 0;         // tokens before "|"
  std::vector<std::string> issues;    // parse failures and degree mismatches
  std::vector<std::string> notes;     // order violations, repeated degrees

  bool quarantined() const { return !issues.empty(); }
  /// Degree shared by every parsed monomial, if they agree.
  std::optional<DivisorClass> monomial_degree(const CoxRing& ring) const;
  std::vector<Monomial> parsed() const;
};

struct Table {
  std::string name;
  int r = 0;
  std::vector<TableRow> rows;

  std::vector<Monomial> lead_monomials() const;
  std::size_t quarantined_count() const;
};

struct ReferenceTables {
  std::map<std::string, std::string> order_specs;  // "r4", "r5", "r6"
  std::vector<Monomial> m4;
  Table m5;      // conic rows with weights
  Table t1;      // r=6 conic rows
  Table t2;      // r=6 cubic rows
  Table t3;      // the -K row
  Table ugly1;   // five dependent -K monomials
  std::vector<std::string> t4_variables;
  std::vector<std::vector<std::int64_t>> t4;
  std::vector<std::string> log;  // loader messages

  MonomialOrder order(int r) const;
  MonomialIdeal initial_ideal(int r) const;
  /// t4 row as a weight vector indexed by the r=5 variables.
  std::vector<std::int64_t> t4_weights(std::size_t row) const;
};

/// Raw table texts keyed by file stem (orders, m4, m5, t1, t2, t3, ugly1, t4).
using TableSources = std::map<std::string, std::string>;

const TableSources& embedded_table_sources();
ReferenceTables load_tables(const TableSources& sources);
/// Loaded once from the embedded sources.
const ReferenceTables& reference_tables();

/// Re-emits the tables in their text format followed by the loader log.
std::string emit_tables(const TableSources& sources);

}  // namespace coxlab
