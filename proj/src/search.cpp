#include "pgq/constructions.hpp"

namespace pgq {

ConstructionParams make_pre_s2_params(const FieldCtx& F, const LinPoly& S1, FieldElem muC, FieldElem w) {
  const int l = subfield_degree(F, Variant::PreS2);
  ConstructionParams P;
  P.variant = Variant::PreS2;
  P.S1 = lp_normalize(F, S1);
  P.muC = muC;
  for (std::uint32_t c = 1; c < F.q(); ++c)
    if (trace_int(F, F.mul(muC, {c})) != 0) {
      P.tC = FieldElem{c};
      break;
    }
  if (!P.tC) throw Error(ErrorKind::NotFound, "no tC outside the kernel");
  P.nuC = F.add(lp_eval(F, P.S1, *P.tC), F.sub(w, F.frob(w, l)));
  return P;
}

ConstructionParams search_s4_params(FieldPtr Fp, const S4SearchOptions& opt, const LinPoly* prefer_S1) {
  const FieldCtx& F = *Fp;
  const int l = subfield_degree(F, Variant::S4);
  if (opt.muC.code == 0 || !F.in_subfield(opt.muC, l) || opt.muB.code == 0 || !F.in_subfield(opt.muB, l))
    throw Error(ErrorKind::InvalidParams, "muC and muB must be nonzero elements of F_{3^l}");
  ConstructionParams P;
  P.variant = Variant::S4;
  P.muB = opt.muB;
  // u - u^g = muC
  auto u = try_artin_schreier(F, F.neg(opt.muC), l);
  if (!u) throw Error(ErrorKind::NotFound, "no u with u - u^g = muC");
  P.u = *u;
  P.muC = opt.muC;

  TupleParams tp;
  tp.mu_B = opt.muB;
  tp.mu_C = opt.muC;
  tp.u = *u;
  if (prefer_S1 && tuple_satisfies(F, TupleKind::S4Twisted, tp, {lp_normalize(F, *prefer_S1).s, {}})) {
    P.S1 = lp_normalize(F, *prefer_S1);
  } else {
    auto sols = solve_construction_tuple(Fp, TupleKind::S4Twisted, tp);
    P.S1 = LinPoly{sols.next()->s};
  }

  Rng rng(opt.seed);
  for (std::uint64_t attempt = 0; attempt < opt.budget; ++attempt) {
    FieldElem tC{};
    if (attempt == 0) {
      for (std::uint32_t c = 1; c < F.q(); ++c)
        if (trace_int(F, F.mul(opt.muC, {c})) != 0) {
          tC = {c};
          break;
        }
    } else {
      tC = rng.elem(F);
    }
    int lamC = trace_int(F, F.mul(opt.muC, tC));
    if (lamC == 0) continue;
    for (int lam = 0; lam < 3; ++lam) {
      FieldElem rhs = F.add(F.scale(*u, lamC), F.scale(opt.muC, lam));
      auto alpha = try_artin_schreier(F, rhs, l);
      if (!alpha || !F.in_subfield(*alpha, 3 * l)) continue;
      P.tC = tC;
      P.alpha = *alpha;
      P.lambda = lam;
      return P;
    }
  }
  throw Error(ErrorKind::NotFound, "no S4 parameters within the search budget");
}

}  // namespace pgq
