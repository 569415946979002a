#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgq/fp_linalg.hpp"
#include "pgq/gf.hpp"

namespace pgq {

// sum_i s[i] X^{p^i}, i = 0..m-1 (reduced modulo X^{p^m} - X).
struct LinPoly {
  std::vector<FieldElem> s;
  friend bool operator==(const LinPoly&, const LinPoly&) = default;
};

LinPoly lp_zero(const FieldCtx& F);
LinPoly lp_monomial(const FieldCtx& F, int i, FieldElem coeff);
LinPoly lp_identity(const FieldCtx& F);
LinPoly lp_normalize(const FieldCtx& F, LinPoly f);  // pad / fold exponents mod m
bool lp_is_zero(const LinPoly& f);
int lp_degree_index(const LinPoly& f);  // largest i with s_i != 0, -1 for zero
std::uint64_t lp_degree(const FieldCtx& F, const LinPoly& f);  // p^i or 0
FieldElem lp_eval(const FieldCtx& F, const LinPoly& f, FieldElem x);
LinPoly lp_add(const FieldCtx& F, const LinPoly& f, const LinPoly& g);
LinPoly lp_scale(const FieldCtx& F, const LinPoly& f, FieldElem c);
// (f o g)(x) = f(g(x))
LinPoly lp_compose(const FieldCtx& F, const LinPoly& f, const LinPoly& g);
// tr(f(x) y) = tr(x f~(y)) for the absolute trace
LinPoly lp_trace_dual(const FieldCtx& F, const LinPoly& f);
// F_p-basis of the kernel
std::vector<FieldElem> lp_kernel(const FieldCtx& F, const LinPoly& f);
FpMatrix lp_matrix(const FieldCtx& F, const LinPoly& f);
FpSubspace lp_image(const FieldCtx& F, const LinPoly& f);
bool lp_coeffs_in_subfield(const FieldCtx& F, const LinPoly& f, int d);
std::string lp_to_string(const FieldCtx& F, const LinPoly& f);

// Subspaces of F_q viewed as F_p^m through coefficient vectors.
FpSubspace field_subspace(const FieldCtx& F, const std::vector<FieldElem>& gens);
bool subspace_contains(const FieldCtx& F, const FpSubspace& S, FieldElem x);

enum class TupleKind { S1Symmetric, S4Twisted, EvenF };
TupleKind parse_tuple_kind(std::string_view s);
std::string_view tuple_kind_name(TupleKind k);

struct TupleParams {
  FieldElem mu_B{}, mu_C{}, u{};   // odd kinds
  FieldElem omega{}, mu{};         // even kind
};

// For the odd kinds `s` holds s_0..s_{m-1}. For the even kind `f` holds f_0..f_{m-1}
// (f_0 = 0) and `s` holds s_0..s_{m-1} with s_1.. derived from f and s_0.
struct ConstructionTuple {
  std::vector<FieldElem> s;
  std::vector<FieldElem> f;
};

// Lazily walks the solution set in lexicographic order of the tuple key. Single consumer.
class TupleSolutions {
 public:
  TupleSolutions(FieldPtr F, TupleKind kind, TupleParams params, AffineSolution sol, int unknowns);
  std::uint64_t count() const { return sol_.count(F_->p()); }
  std::optional<ConstructionTuple> next();
  void reset();

 private:
  ConstructionTuple decode(const FpVec& x) const;
  FieldPtr F_;
  TupleKind kind_;
  TupleParams params_;
  AffineSolution sol_;
  int unknowns_;
  FpVec lambda_;
  bool done_ = false;
};

TupleSolutions solve_construction_tuple(FieldPtr F, TupleKind kind, const TupleParams& params);
// Direct check of the defining conditions.
bool tuple_satisfies(const FieldCtx& F, TupleKind kind, const TupleParams& params, const ConstructionTuple& t);
// s_1..s_{m-1} from f and s_0 via the closed form; returns the full s_0..s_{m-1}.
std::vector<FieldElem> even_s_from_f(const FieldCtx& F, FieldElem omega, const std::vector<FieldElem>& f,
                                     FieldElem s0);

// Solves an affine F_p-linear system in `unknowns` field elements, each confined to the
// subfield F_{p^l}. `residual` returns the list of field values that must vanish.
// Unknown coordinates are ordered so that lambda order equals key order.
template <class Residual>
std::optional<AffineSolution> solve_field_system(const FieldCtx& F, int unknowns, int l, Residual residual);

}  // namespace pgq

#include "pgq/linpoly_impl.hpp"
