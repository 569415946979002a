#include "pgq/linpoly.hpp"

#include <sstream>

namespace pgq {

LinPoly lp_zero(const FieldCtx& F) { return LinPoly{std::vector<FieldElem>(F.m(), F.zero())}; }

LinPoly lp_monomial(const FieldCtx& F, int i, FieldElem coeff) {
  LinPoly f = lp_zero(F);
  i %= F.m();
  if (i < 0) i += F.m();
  f.s[i] = coeff;
  return f;
}

LinPoly lp_identity(const FieldCtx& F) { return lp_monomial(F, 0, F.one()); }

LinPoly lp_normalize(const FieldCtx& F, LinPoly f) {
  LinPoly g = lp_zero(F);
  for (std::size_t i = 0; i < f.s.size(); ++i) g.s[i % F.m()] = F.add(g.s[i % F.m()], f.s[i]);
  return g;
}

bool lp_is_zero(const LinPoly& f) {
  for (auto c : f.s)
    if (c.code) return false;
  return true;
}

int lp_degree_index(const LinPoly& f) {
  for (int i = int(f.s.size()) - 1; i >= 0; --i)
    if (f.s[i].code) return i;
  return -1;
}

std::uint64_t lp_degree(const FieldCtx& F, const LinPoly& f) {
  int d = lp_degree_index(f);
  if (d < 0) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) r *= std::uint64_t(F.p());
  return r;
}

FieldElem lp_eval(const FieldCtx& F, const LinPoly& f, FieldElem x) {
  FieldElem r = F.zero();
  for (std::size_t i = 0; i < f.s.size(); ++i)
    if (f.s[i].code) r = F.add(r, F.mul(f.s[i], F.frob(x, int(i))));
  return r;
}

LinPoly lp_add(const FieldCtx& F, const LinPoly& f, const LinPoly& g) {
  LinPoly r = lp_zero(F);
  for (int i = 0; i < F.m(); ++i) r.s[i] = F.add(f.s[i], g.s[i]);
  return r;
}

LinPoly lp_scale(const FieldCtx& F, const LinPoly& f, FieldElem c) {
  LinPoly r = lp_zero(F);
  for (int i = 0; i < F.m(); ++i) r.s[i] = F.mul(f.s[i], c);
  return r;
}

LinPoly lp_compose(const FieldCtx& F, const LinPoly& f, const LinPoly& g) {
  // f(g(x)) = sum_i f_i (sum_j g_j x^{p^j})^{p^i} = sum_{i,j} f_i g_j^{p^i} x^{p^{i+j}}
  const int m = F.m();
  LinPoly r = lp_zero(F);
  for (int i = 0; i < m; ++i) {
    if (!f.s[i].code) continue;
    for (int j = 0; j < m; ++j) {
      if (!g.s[j].code) continue;
      int k = (i + j) % m;
      r.s[k] = F.add(r.s[k], F.mul(f.s[i], F.frob(g.s[j], i)));
    }
  }
  return r;
}

LinPoly lp_trace_dual(const FieldCtx& F, const LinPoly& f) {
  const int m = F.m();
  LinPoly r = lp_zero(F);
  for (int i = 0; i < m; ++i) r.s[i] = F.frob(f.s[(m - i) % m], i);
  return r;
}

FpMatrix lp_matrix(const FieldCtx& F, const LinPoly& f) {
  const int m = F.m();
  FpMatrix A(F.p(), m, m);
  auto basis = F.fp_basis();
  for (int k = 0; k < m; ++k) A.set_column(k, F.coeffs(lp_eval(F, f, basis[k])));
  return A;
}

std::vector<FieldElem> lp_kernel(const FieldCtx& F, const LinPoly& f) {
  auto ker = fp_kernel(lp_matrix(F, f));
  std::vector<FieldElem> out;
  for (auto& v : ker.basis) out.push_back(F.from_coeffs(v));
  return out;
}

FpSubspace field_subspace(const FieldCtx& F, const std::vector<FieldElem>& gens) {
  FpSubspace S(F.p(), F.m());
  for (auto g : gens) S.insert(F.coeffs(g));
  return S;
}

bool subspace_contains(const FieldCtx& F, const FpSubspace& S, FieldElem x) { return S.contains(F.coeffs(x)); }

FpSubspace lp_image(const FieldCtx& F, const LinPoly& f) {
  std::vector<FieldElem> imgs;
  for (auto b : F.fp_basis()) imgs.push_back(lp_eval(F, f, b));
  return field_subspace(F, imgs);
}

bool lp_coeffs_in_subfield(const FieldCtx& F, const LinPoly& f, int d) {
  for (auto c : f.s)
    if (!F.in_subfield(c, d)) return false;
  return true;
}

std::string lp_to_string(const FieldCtx& F, const LinPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < f.s.size(); ++i) {
    if (!f.s[i].code) continue;
    if (!first) os << " + ";
    first = false;
    if (f.s[i] != F.one()) os << F.to_string(f.s[i]) << '*';
    os << "X^(p^" << i << ')';
  }
  if (first) os << '0';
  return os.str();
}

TupleKind parse_tuple_kind(std::string_view s) {
  if (s == "s1-symmetric") return TupleKind::S1Symmetric;
  if (s == "s4-twisted") return TupleKind::S4Twisted;
  if (s == "even-f-tuple") return TupleKind::EvenF;
  throw Error(ErrorKind::ParseError, "unknown tuple kind '" + std::string(s) + "'");
}

std::string_view tuple_kind_name(TupleKind k) {
  switch (k) {
    case TupleKind::S1Symmetric: return "s1-symmetric";
    case TupleKind::S4Twisted: return "s4-twisted";
    case TupleKind::EvenF: return "even-f-tuple";
  }
  return "?";
}

namespace {

// subfield degree of the tuple entries
int tuple_subfield(const FieldCtx& F, TupleKind kind) {
  const int p = F.p(), m = F.m();
  switch (kind) {
    case TupleKind::S1Symmetric:
      if (p == 2 || m % p != 0) throw Error(ErrorKind::InconsistentParams, "needs odd p and q = p^{pl}");
      return m / p;
    case TupleKind::S4Twisted:
      if (p != 3 || m % 9 != 0) throw Error(ErrorKind::InconsistentParams, "needs q = 3^{9l}");
      return m / 9;
    case TupleKind::EvenF:
      if (p != 2) throw Error(ErrorKind::InconsistentParams, "needs characteristic 2");
      return m;
  }
  return m;
}

std::vector<FieldElem> residual(const FieldCtx& F, TupleKind kind, const TupleParams& P,
                                const std::vector<FieldElem>& x) {
  const int m = F.m();
  std::vector<FieldElem> r;
  switch (kind) {
    case TupleKind::S1Symmetric:
      for (int i = 1; i < m; ++i)
        r.push_back(F.sub(F.mul(P.mu_B, x[i]), F.mul(F.frob(x[m - i], i), F.frob(P.mu_B, i))));
      break;
    case TupleKind::S4Twisted:
      for (int i = 1; i < m; ++i) {
        FieldElem lhs = F.add(F.neg(F.mul(P.mu_B, x[i])), F.mul(F.frob(x[m - i], i), F.frob(P.mu_B, i)));
        FieldElem rhs = F.sub(F.mul(P.mu_C, F.frob(P.u, i)), F.mul(P.u, F.frob(P.mu_C, i)));
        r.push_back(F.sub(lhs, rhs));
      }
      break;
    case TupleKind::EvenF: {
      // x = (f_1, ..., f_{m-1}, s_0)
      auto f = [&](int i) { return i == 0 ? F.zero() : x[i - 1]; };
      for (int i = 1; i < m; ++i)
        r.push_back(F.sub(F.mul(P.mu, f(i)), F.frob(F.mul(P.mu, f(m - i)), i)));
      FieldElem sum = F.zero();
      for (int j = 1; j < m; ++j)
        sum = F.add(sum, F.mul(F.div(P.omega, F.frob(P.omega, j)), F.frob(f(m - j), j)));
      r.push_back(sum);
      break;
    }
  }
  return r;
}

void check_params(const FieldCtx& F, TupleKind kind, const TupleParams& P, int l) {
  switch (kind) {
    case TupleKind::S1Symmetric:
    case TupleKind::S4Twisted:
      if (P.mu_B.code == 0 || !F.in_subfield(P.mu_B, l))
        throw Error(ErrorKind::InconsistentParams, "mu_B must be a nonzero element of F_{p^l}");
      if (kind == TupleKind::S4Twisted && (P.mu_C.code == 0 || !F.in_subfield(P.mu_C, l)))
        throw Error(ErrorKind::InconsistentParams, "mu_C must be a nonzero element of F_{3^l}");
      break;
    case TupleKind::EvenF:
      if (P.omega.code == 0 || P.mu.code == 0)
        throw Error(ErrorKind::InconsistentParams, "omega and mu must be nonzero");
      break;
  }
}

}  // namespace

std::vector<FieldElem> even_s_from_f(const FieldCtx& F, FieldElem omega, const std::vector<FieldElem>& f,
                                     FieldElem s0) {
  // s_{i+1} = sum_{j=1}^{i} w^{1-2^j} f_{i+1-j}^{2^j} + w^{1-2^{i+1}} s_0^{2^{i+1}}
  const int m = F.m();
  std::vector<FieldElem> s(m);
  s[0] = s0;
  for (int i = 0; i + 1 < m; ++i) {
    FieldElem acc = F.zero();
    for (int j = 1; j <= i; ++j)
      acc = F.add(acc, F.mul(F.div(omega, F.frob(omega, j)), F.frob(f[i + 1 - j], j)));
    acc = F.add(acc, F.mul(F.div(omega, F.frob(omega, i + 1)), F.frob(s0, i + 1)));
    s[i + 1] = acc;
  }
  return s;
}

bool tuple_satisfies(const FieldCtx& F, TupleKind kind, const TupleParams& P, const ConstructionTuple& t) {
  const int m = F.m();
  int l = tuple_subfield(F, kind);
  std::vector<FieldElem> x;
  if (kind == TupleKind::EvenF) {
    if (int(t.f.size()) != m || t.f[0].code != 0 || t.s.empty()) return false;
    x.assign(t.f.begin() + 1, t.f.end());
    x.push_back(t.s[0]);
    if (int(t.s.size()) == m && t.s != even_s_from_f(F, P.omega, t.f, t.s[0])) return false;
  } else {
    if (int(t.s.size()) != m) return false;
    for (auto c : t.s)
      if (!F.in_subfield(c, l)) return false;
    x = t.s;
  }
  for (auto r : residual(F, kind, P, x))
    if (r.code) return false;
  return true;
}

TupleSolutions::TupleSolutions(FieldPtr F, TupleKind kind, TupleParams params, AffineSolution sol, int unknowns)
    : F_(std::move(F)), kind_(kind), params_(params), sol_(std::move(sol)), unknowns_(unknowns) {
  reset();
}

void TupleSolutions::reset() {
  lambda_.assign(sol_.basis.size(), 0);
  done_ = false;
}

ConstructionTuple TupleSolutions::decode(const FpVec& x) const {
  auto xs = detail::unpack_unknowns(*F_, x, unknowns_);
  ConstructionTuple t;
  if (kind_ == TupleKind::EvenF) {
    t.f.push_back(F_->zero());
    t.f.insert(t.f.end(), xs.begin(), xs.end() - 1);
    t.s = even_s_from_f(*F_, params_.omega, t.f, xs.back());
  } else {
    t.s = xs;
  }
  return t;
}

std::optional<ConstructionTuple> TupleSolutions::next() {
  if (done_) return std::nullopt;
  auto t = decode(sol_.at(lambda_, F_->p()));
  // odometer, last coordinate fastest
  int k = int(lambda_.size()) - 1;
  while (k >= 0) {
    if (++lambda_[k] < F_->p()) break;
    lambda_[k] = 0;
    --k;
  }
  if (k < 0) done_ = true;
  return t;
}

TupleSolutions solve_construction_tuple(FieldPtr F, TupleKind kind, const TupleParams& params) {
  int l = tuple_subfield(*F, kind);
  check_params(*F, kind, params, l);
  const FieldCtx& Fr = *F;
  auto sol = solve_field_system(Fr, Fr.m(), l, [&](const std::vector<FieldElem>& x) {
    return residual(Fr, kind, params, x);
  });
  if (!sol) throw Error(ErrorKind::InconsistentParams, "tuple conditions have no solution");
  return TupleSolutions(F, kind, params, std::move(*sol), F->m());
}

}  // namespace pgq
