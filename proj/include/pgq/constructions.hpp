#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgq/group.hpp"
#include "pgq/linpoly.hpp"

namespace pgq {

enum class Variant { C1, C2even, S2, S3, S4, PreS2, PreS3, PreS4, Raw };

Variant parse_variant(std::string_view s);
std::string_view variant_name(Variant v);

// Parameters of a model. Only the fields used by the variant are read:
//   C1      S1
//   C2even  omega, mu, f (f_0 = 0), s0; the s-tuple is derived
//   S2      S1 (coefficients in F_{p^l}), muC
//   S3      S1 (the s-tuple), muB
//   S4      S1, muB, muC, u, tC, alpha, lambda
//   PreS2   S1, muC, tC, nuC
//   PreS3   S1 (= S_2), muB, alpha
//   PreS4   S1 (= S_2), muB, u, tC, alpha, lambda; muC = u - u^g
//   Raw     raw_T: T(a,b,c) = sum raw_T[k] c^k with trivial Frobenius (not checked)
struct ConstructionParams {
  Variant variant = Variant::C1;
  LinPoly S1;
  std::optional<FieldElem> muB, muC, u, tC, alpha, nuC, omega, mu, s0;
  int lambda = 0;
  std::vector<FieldElem> f;
  std::vector<FieldElem> raw_T;
  std::uint64_t self_check_samples = 2000;
  std::uint64_t self_check_seed = 0x5eed;
  // filled in by the builder
  std::string u_form;
};

// Subfield degree l: q = p^{pl} for the odd twisted variants, q = 3^{9l} for S4/PreS4.
int subfield_degree(const FieldCtx& F, Variant v);

// Validates the parameters, then self-checks a sample of the group law before returning.
GroupSpec build_construction(FieldPtr F, const ConstructionParams& params);
// Same without the sampled self-check.
GroupSpec build_unchecked(FieldPtr F, const ConstructionParams& params);

// Conjugate model P -> h^-1 g_{P'} h with P' = act(h^-1, P). h must fix the base point.
GroupSpec conjugate_spec(const GroupSpec& G, const GroupElem& h);

// Conjugating element (E(0,0,0,u), 1) that brings a pre-form into its normal form, together
// with the parameters of that normal form.
struct StandardConjugation {
  GroupElem h;
  ConstructionParams target;
};
StandardConjugation standard_conjugation(const FieldCtx& F, const ConstructionParams& pre);

// Lexicographic walk over (a, b, c) with c fastest, or seeded uniform samples.
// Exhaustive walks are capped at 2e7 elements (PGQ_ENUM_CAP), CapExceeded beyond.
class ElementWalk {
 public:
  ElementWalk(const GroupSpec& G, const CheckMode& mode);
  std::optional<GroupElem> next();

 private:
  const GroupSpec& G_;
  CheckMode mode_;
  Rng rng_;
  std::uint64_t i_ = 0, n_;
};

struct S4SearchOptions {
  FieldElem muC{1}, muB{1};
  std::uint64_t seed = 1;
  std::uint64_t budget = 64;
};
// Finds parameters satisfying all S4 conditions, or throws NotFound.
ConstructionParams search_s4_params(FieldPtr F, const S4SearchOptions& opt, const LinPoly* prefer_S1 = nullptr);
// PreS2 parameters with the least admissible tC and nuC = S1(tC) + (w - w^g).
ConstructionParams make_pre_s2_params(const FieldCtx& F, const LinPoly& S1, FieldElem muC, FieldElem w);

// (1 - g)^k applied to a linearized polynomial, g(x) = x^{p^l}.
LinPoly one_minus_g_pow(const FieldCtx& F, int l, int k, const LinPoly& f);

}  // namespace pgq
