// Nilpotency-class table at p = 3, l = 2 (q = 3^6) for S2 (muC = 1) and S3 (alpha = 0, muB = 1).
#pragma once

#include <string>
#include <vector>

#include "pgq/invariants.hpp"

namespace pgq {

struct TableRow {
  std::string id;       // table row, e.g. "S2.4"; a row evaluated at several k gets one id per k
  std::string family;   // row formula as printed
  std::string s1_text;  // the instance used
  int expected_class = 0;
  ConstructionParams params;
};

struct TableResult {
  TableRow row;
  CentralSeries series;
  std::string error;  // set when the series could not be computed
  bool matches() const { return error.empty() && series.cls == row.expected_class; }
  bool in_range() const { return error.empty() && series.cls >= 6 && series.cls <= 9; }
};

// Field must be 3^6.
std::vector<TableRow> ncodd_p3l2_rows(const FieldCtx& F);
TableResult run_table_row(FieldPtr F, const TableRow& row, std::size_t gamma_cap);
// One line per row: row,family,S1,expected_class,computed_class,class_in_6_9,match,gamma_orders
std::string table_csv(const std::vector<TableResult>& results);

}  // namespace pgq
