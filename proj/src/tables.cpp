#include "pgq/tables.hpp"

#include <sstream>

namespace pgq {

namespace {

LinPoly monomials(const FieldCtx& F, std::initializer_list<int> idx) {
  LinPoly f = lp_zero(F);
  for (int i : idx) f.s[std::size_t(i % F.m())] = F.add(f.s[std::size_t(i % F.m())], F.one());
  return f;
}

TableRow s2_row(const FieldCtx& F, std::string id, std::string family, LinPoly S, int expected) {
  TableRow r{std::move(id), std::move(family), lp_to_string(F, S), expected, {}};
  r.params.variant = Variant::S2;
  r.params.S1 = std::move(S);
  r.params.muC = F.one();
  return r;
}

TableRow s3_row(const FieldCtx& F, std::string id, std::string family, LinPoly S, int expected) {
  TableRow r{std::move(id), std::move(family), lp_to_string(F, S), expected, {}};
  r.params.variant = Variant::S3;
  r.params.S1 = std::move(S);
  r.params.muB = F.one();
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::vector<TableRow> ncodd_p3l2_rows(const FieldCtx& F) {
  if (F.p() != 3 || F.m() != 6) throw Error(ErrorKind::InvalidParams, "the p = 3, l = 2 table needs q = 3^6");
  const int l = 2;
  const LinPoly z = lp_identity(F);
  std::vector<TableRow> rows;
  rows.push_back(s2_row(F, "S2.1", "0", lp_zero(F), 6));
  rows.push_back(s2_row(F, "S2.2", "z^{3^k}, l does not divide k (k=1)", monomials(F, {1}), 9));
  rows.push_back(s2_row(F, "S2.3", "z^{3^k}, l divides k (k=2)", monomials(F, {2}), 8));
  for (int k = 1; k <= 2; ++k)
    rows.push_back(s2_row(F, "S2.4", "(1-g)^k(z) (k=" + std::to_string(k) + ")", one_minus_g_pow(F, l, k, z), 9 - k));
  rows.push_back(s3_row(F, "S3.1", "0", lp_zero(F), 6));
  rows.push_back(s3_row(F, "S3.2", "z", z, 8));
  rows.push_back(s3_row(F, "S3.3", "z^{3^k} + z^{3^{6-k}} (k=1)", monomials(F, {1, 5}), 9));
  // (1-g)^{2k}(z^{3^{6-kl}}) with 2 <= 2k <= 2
  rows.push_back(s3_row(F, "S3.4", "(1-g)^{2k}(z^{3^{6-kl}}) (k=1)",
                        one_minus_g_pow(F, l, 2, monomials(F, {6 - l})), 7));
  return rows;
}

TableResult run_table_row(FieldPtr F, const TableRow& row, std::size_t gamma_cap) {
  TableResult res{row, {}, {}};
  try {
    GroupSpec G = build_construction(F, row.params);
    res.series = lower_central_series(G, gamma_cap);
    if (res.series.cls < 0) res.error = res.series.unknown_reason;
  } catch (const Error& e) {
    res.error = e.what();
  }
  return res;
}

std::string table_csv(const std::vector<TableResult>& results) {
  std::ostringstream os;
  os << "row,family,S1,expected_class,computed_class,class_in_6_9,match,gamma_orders\n";
  for (const auto& r : results) {
    std::string orders;
    for (std::size_t i = 0; i < r.series.orders.size(); ++i) orders += (i ? ";" : "") + std::to_string(r.series.orders[i]);
    os << csv_field(r.row.id) << ',' << csv_field(r.row.family) << ',' << csv_field(r.row.s1_text) << ','
       << r.row.expected_class << ',' << (r.error.empty() ? std::to_string(r.series.cls) : "unknown") << ','
       << (r.in_range() ? "yes" : "no") << ',' << (r.matches() ? "yes" : "no") << ','
       << csv_field(r.error.empty() ? orders : r.error) << '\n';
  }
  return os.str();
}

}  // namespace pgq
