#pragma once

namespace pgq {

namespace detail {

inline std::vector<FieldElem> unpack_unknowns(const FieldCtx& F, const FpVec& x, int unknowns) {
  const int m = F.m();
  std::vector<FieldElem> out(unknowns);
  std::vector<int> c(m);
  for (int i = 0; i < unknowns; ++i) {
    for (int j = 0; j < m; ++j) c[m - 1 - j] = x[std::size_t(i) * m + j];
    out[i] = F.from_coeffs(c);
  }
  return out;
}

}  // namespace detail

template <class Residual>
std::optional<AffineSolution> solve_field_system(const FieldCtx& F, int unknowns, int l, Residual residual) {
  const int m = F.m(), p = F.p();
  const int n = unknowns * m;
  std::vector<FieldElem> zero(unknowns, F.zero());
  auto base = residual(zero);
  const int eqs = int(base.size());
  const bool sub = l != m;
  const int rows = eqs * m + (sub ? unknowns * m : 0);
  FpMatrix A(p, rows, n);
  FpVec rhs(rows, 0);
  for (int e = 0; e < eqs; ++e) {
    auto c = F.coeffs(base[e]);
    for (int j = 0; j < m; ++j) rhs[e * m + j] = fp_mod(-c[j], p);
  }
  FpVec unit(n, 0);
  for (int k = 0; k < n; ++k) {
    unit[k] = 1;
    auto xs = detail::unpack_unknowns(F, unit, unknowns);
    unit[k] = 0;
    auto r = residual(xs);
    for (int e = 0; e < eqs; ++e) {
      auto c = F.coeffs(F.sub(r[e], base[e]));
      for (int j = 0; j < m; ++j) A.at(e * m + j, k) = c[j];
    }
    if (sub) {
      int i = k / m;
      auto c = F.coeffs(F.sub(F.frob(xs[i], l), xs[i]));
      for (int j = 0; j < m; ++j) A.at(eqs * m + i * m + j, k) = c[j];
    }
  }
  return fp_solve(A, rhs);
}

}  // namespace pgq
