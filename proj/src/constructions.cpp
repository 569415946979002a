#include "pgq/constructions.hpp"

#include <memory>

namespace pgq {

Variant parse_variant(std::string_view s) {
  if (s == "C1") return Variant::C1;
  if (s == "C2even") return Variant::C2even;
  if (s == "S2") return Variant::S2;
  if (s == "S3") return Variant::S3;
  if (s == "S4") return Variant::S4;
  if (s == "PreS2") return Variant::PreS2;
  if (s == "PreS3") return Variant::PreS3;
  if (s == "PreS4") return Variant::PreS4;
  if (s == "Raw") return Variant::Raw;
  throw Error(ErrorKind::ParseError, "unknown variant '" + std::string(s) + "'");
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::C1: return "C1";
    case Variant::C2even: return "C2even";
    case Variant::S2: return "S2";
    case Variant::S3: return "S3";
    case Variant::S4: return "S4";
    case Variant::PreS2: return "PreS2";
    case Variant::PreS3: return "PreS3";
    case Variant::PreS4: return "PreS4";
    case Variant::Raw: return "Raw";
  }
  return "?";
}

int subfield_degree(const FieldCtx& F, Variant v) {
  const int p = F.p(), m = F.m();
  switch (v) {
    case Variant::S2:
    case Variant::S3:
    case Variant::PreS2:
    case Variant::PreS3:
      if (p == 2 || m % p != 0) throw Error(ErrorKind::InvalidParams, "needs odd p and q = p^{pl}");
      return m / p;
    case Variant::S4:
    case Variant::PreS4:
      if (p != 3 || m % 9 != 0) throw Error(ErrorKind::InvalidParams, "needs q = 3^{9l}");
      return m / 9;
    default:
      return m;
  }
}

LinPoly one_minus_g_pow(const FieldCtx& F, int l, int k, const LinPoly& f) {
  LinPoly op = lp_add(F, lp_identity(F), lp_monomial(F, l, F.neg(F.one())));
  LinPoly r = f;
  for (int i = 0; i < k; ++i) r = lp_compose(F, op, r);
  return r;
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); }

FieldElem need(const std::optional<FieldElem>& x, const char* name) {
  if (!x) invalid(std::string("missing parameter ") + name);
  return *x;
}

void need_nonzero_in(const FieldCtx& F, FieldElem x, int d, const char* name) {
  if (x.code == 0 || !F.in_subfield(x, d))
    invalid(std::string(name) + " must be a nonzero element of F_{p^" + std::to_string(d) + "}");
}

// Everything the element functions need, computed once.
struct Model {
  FieldPtr F;
  ConstructionParams P;
  int l = 0, half = 0;
  LinPoly S;
  FieldElem muB{}, muC{}, alpha{}, nuB{}, omega{}, mu{}, muomega{}, mu2omega{};
  std::vector<FieldElem> cross;  // C2even: mu^{2^i} f_{j-i}^{2^i} indexed i*m+j
  // coset data: G = union of G_K h^i
  int lamC = 0;
  std::vector<GroupElem> hpow, hinv;

  int tr(FieldElem x) const { return trace_int(*F, x); }
  int quad(FieldElem c) const {  // Q(c) = -tr(muB c S(c))
    return (F->p() - tr(F->mul(muB, F->mul(c, lp_eval(*F, S, c))))) % F->p();
  }
  FieldElem nB(int e) const {  // (1 + g1 + ... + g1^{e-1})(nuB), g1 = x^{p^l} or x^{3^{3l}}
    int step = (P.variant == Variant::PreS4) ? 3 * l : l;
    FieldElem acc = F->zero();
    for (int k = 0; k < e; ++k) acc = F->add(acc, F->frob(nuB, k * step));
    return acc;
  }

  GroupElem core(FieldElem a, FieldElem b, FieldElem c) const {
    const FieldCtx& K = *F;
    const int p = K.p(), m = K.m();
    switch (P.variant) {
      case Variant::C1:
      case Variant::PreS2:
        return {a, b, c, lp_eval(K, S, c), {0}};
      case Variant::Raw: {
        FieldElem t = K.zero(), pw = K.one();
        for (auto coef : P.raw_T) {
          t = K.add(t, K.mul(coef, pw));
          pw = K.mul(pw, c);
        }
        return {a, b, c, t, {0}};
      }
      case Variant::C2even: {
        // omega tr(mu^2 omega (a + bc) + mu b) + sum s_i c^{2^i} + omega sum_{i<j} mu^{2^i} f_{j-i}^{2^i} c^{2^i + 2^j}
        FieldElem t = tr(K.add(K.mul(mu2omega, K.add(a, K.mul(b, c))), K.mul(mu, b))) ? omega : K.zero();
        t = K.add(t, lp_eval(K, S, c));
        FieldElem acc = K.zero();
        for (int i = 0; i < m; ++i) {
          FieldElem ci = K.frob(c, i);
          for (int j = i + 1; j < m; ++j) {
            FieldElem w = cross[std::size_t(i) * m + j];
            if (w.code) acc = K.add(acc, K.mul(w, K.mul(ci, K.frob(c, j))));
          }
        }
        return {a, b, c, K.add(t, K.mul(omega, acc)), {0}};
      }
      case Variant::S2: {
        int e = tr(K.mul(muC, c));
        return {a, b, c, lp_eval(K, S, c), {l * e % m}};
      }
      case Variant::S3:
      case Variant::PreS3: {
        FieldElem lin = K.mul(muB, b);
        if (P.variant == Variant::PreS3) lin = K.add(lin, K.mul(alpha, c));
        int e = (half * quad(c) + tr(lin)) % p;
        FieldElem t = lp_eval(K, S, c);
        if (P.variant == Variant::PreS3) t = K.add(t, nB(e));
        return {a, b, c, t, {l * e % m}};
      }
      case Variant::S4:
      case Variant::PreS4: {
        int e = (half * quad(c) + tr(K.add(K.mul(alpha, c), K.mul(muB, b)))) % p;
        FieldElem t = lp_eval(K, S, c);
        if (P.variant == Variant::PreS4) t = K.add(t, nB(e));
        return {a, b, c, t, {3 * l * e % m}};
      }
    }
    return {};
  }

  bool cosets() const {
    return P.variant == Variant::S4 || P.variant == Variant::PreS4 || P.variant == Variant::PreS2;
  }

  GroupElem elem(FieldElem x, FieldElem y, FieldElem z) const {
    if (!cosets()) return core(x, y, z);
    const FieldCtx& K = *F;
    const int p = K.p();
    int i = tr(K.mul(muC, z)) * fp_inv(lamC, p) % p;
    if (i == 0) return core(x, y, z);
    AffinePoint Q = act(K, hinv[i], {x, y, z});
    if (tr(K.mul(muC, Q.z)) != 0) throw Error(ErrorKind::SelfCheckFailed, "coset decomposition left the kernel");
    return g_mul(K, core(Q.x, Q.y, Q.z), hpow[i]);
  }
};

std::shared_ptr<Model> prepare(FieldPtr Fp, const ConstructionParams& P0) {
  auto M = std::make_shared<Model>();
  M->F = Fp;
  M->P = P0;
  const FieldCtx& F = *Fp;
  const int p = F.p(), m = F.m();
  ConstructionParams& P = M->P;
  if (P.variant != Variant::Raw) {
    P.S1 = lp_normalize(F, P.S1.s.empty() ? lp_zero(F) : P.S1);
  }
  M->S = P.S1;
  M->half = (p + 1) / 2 % p;
  const Variant v = P.variant;
  const int l = subfield_degree(F, v);
  M->l = l;

  switch (v) {
    case Variant::C1:
    case Variant::Raw:
      break;
    case Variant::C2even: {
      if (p != 2 || m < 2) invalid("C2even needs q = 2^m with m > 1");
      M->omega = need(P.omega, "omega");
      M->mu = need(P.mu, "mu");
      if (!M->omega.code || !M->mu.code) invalid("omega and mu must be nonzero");
      if (int(P.f.size()) != m) invalid("f-tuple must have m entries");
      FieldElem s0 = need(P.s0, "s0");
      ConstructionTuple t{even_s_from_f(F, M->omega, P.f, s0), P.f};
      if (!tuple_satisfies(F, TupleKind::EvenF, {F.zero(), F.zero(), F.zero(), M->omega, M->mu}, t))
        invalid("f-tuple violates the even tuple conditions");
      P.S1 = LinPoly{t.s};
      M->S = P.S1;
      M->muomega = F.mul(M->mu, M->omega);
      M->mu2omega = F.mul(M->mu, M->muomega);
      M->cross.assign(std::size_t(m) * m, F.zero());
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          M->cross[std::size_t(i) * m + j] = F.mul(F.frob(M->mu, i), F.frob(P.f[j - i], i));
      break;
    }
    case Variant::S2: {
      M->muC = need(P.muC, "muC");
      need_nonzero_in(F, M->muC, l, "muC");
      if (!lp_coeffs_in_subfield(F, M->S, l)) invalid("S1 coefficients must lie in F_{p^l}");
      break;
    }
    case Variant::S3:
    case Variant::PreS3: {
      M->muB = need(P.muB, "muB");
      need_nonzero_in(F, M->muB, l, "muB");
      if (!tuple_satisfies(F, TupleKind::S1Symmetric, {M->muB}, {M->S.s, {}}))
        invalid("s-tuple violates the symmetry condition mu_B s_i = s_{pl-i}^{p^i} mu_B^{p^i}");
      if (v == Variant::PreS3) {
        M->alpha = need(P.alpha, "alpha");
        M->nuB = F.div(F.sub(F.frob(M->alpha, l), M->alpha), M->muB);
      }
      break;
    }
    case Variant::PreS2: {
      M->muC = need(P.muC, "muC");
      need_nonzero_in(F, M->muC, l, "muC");
      if (!lp_coeffs_in_subfield(F, M->S, l)) invalid("S1 coefficients must lie in F_{p^l}");
      FieldElem tC = need(P.tC, "tC");
      M->lamC = M->tr(F.mul(M->muC, tC));
      if (M->lamC == 0) invalid("tC must lie outside the kernel of tr(muC x)");
      FieldElem nuC = need(P.nuC, "nuC");
      if (trace_rel(F, F.sub(nuC, lp_eval(F, M->S, tC)), l).code)
        invalid("nuC - S1(tC) must have zero relative trace to F_{p^l}");
      GroupElem h{F.zero(), F.zero(), tC, nuC, {l}};
      M->hpow = {g_identity()};
      for (int i = 1; i < p; ++i) M->hpow.push_back(g_mul(F, M->hpow.back(), h));
      for (auto& x : M->hpow) M->hinv.push_back(g_inv(F, x));
      break;
    }
    case Variant::S4:
    case Variant::PreS4: {
      FieldElem u = need(P.u, "u");
      FieldElem muC = F.sub(u, F.frob(u, l));
      need_nonzero_in(F, muC, l, "muC = u - u^g");
      if (P.muC && *P.muC != muC) invalid("muC does not equal u - u^g");
      FieldElem second = F.sub(muC, F.frob(muC, l));
      if (second.code) invalid("(1-g)^2 u must vanish");
      P.muC = muC;
      M->muC = muC;
      P.u_form = F.in_subfield(u, 3 * l) ? "u in F_{3^{3l}}" : "u in ker (1-g)^2";
      M->muB = need(P.muB, "muB");
      need_nonzero_in(F, M->muB, l, "muB");
      FieldElem tC = need(P.tC, "tC");
      M->lamC = M->tr(F.mul(muC, tC));
      if (M->lamC == 0) invalid("lambda_C = tr(muC tC) must be nonzero");
      if (!tuple_satisfies(F, TupleKind::S4Twisted, {M->muB, muC, u}, {M->S.s, {}}))
        invalid("s-tuple violates the twisted condition");
      M->alpha = need(P.alpha, "alpha");
      if (P.lambda < 0 || P.lambda >= 3) invalid("lambda must be in F_3");
      FieldElem rhs = F.add(F.scale(u, M->lamC), F.scale(muC, P.lambda));
      FieldElem nuC;
      if (v == Variant::S4) {
        if (!F.in_subfield(M->alpha, 3 * l)) invalid("alpha must lie in F_{3^{3l}}");
        if (F.sub(F.frob(M->alpha, l), M->alpha) != rhs) invalid("g(alpha) - alpha must equal lambda_C u + lambda muC");
        nuC = lp_eval(F, M->S, tC);
      } else {
        // nuC = S2(tC) + muB^-1 (alpha^g - alpha - lambda_C u - lambda muC)
        FieldElem d = F.div(F.sub(F.sub(F.frob(M->alpha, l), M->alpha), rhs), M->muB);
        nuC = F.add(lp_eval(F, M->S, tC), d);
        FieldElem nuB = F.zero();
        for (int i = 0; i < 3; ++i) nuB = F.add(nuB, F.frob(d, i * l));
        M->nuB = nuB;
        P.nuC = nuC;
      }
      GroupElem h{F.zero(), F.zero(), tC, nuC, {l}};
      M->hpow = {g_identity()};
      for (int i = 1; i < 3; ++i) M->hpow.push_back(g_mul(F, M->hpow.back(), h));
      for (auto& x : M->hpow) M->hinv.push_back(g_inv(F, x));
      break;
    }
  }
  return M;
}

std::string spec_id(const FieldCtx& F, const ConstructionParams& P) {
  return std::string(variant_name(P.variant)) + "@" + F.spec_string();
}

}  // namespace

GroupSpec build_unchecked(FieldPtr F, const ConstructionParams& params) {
  auto M = prepare(F, params);
  auto stored = std::make_shared<const ConstructionParams>(M->P);
  return GroupSpec(F, spec_id(*F, M->P), [M](FieldElem a, FieldElem b, FieldElem c) { return M->elem(a, b, c); },
                   stored);
}

GroupSpec build_construction(FieldPtr F, const ConstructionParams& params) {
  GroupSpec G = build_unchecked(F, params);
  if (params.variant == Variant::Raw) return G;
  CheckMode mode;
  mode.exhaustive = false;
  mode.samples = params.self_check_samples;
  mode.seed = params.self_check_seed;
  auto rep = check_theorem_main(G, mode);
  if (!rep.pass) {
    const auto& v = *rep.violation;
    const FieldCtx& K = *F;
    throw Error(ErrorKind::SelfCheckFailed,
                "group law fails (" + v.what + ") at (" + K.to_string(v.left.x) + "," + K.to_string(v.left.y) + "," +
                    K.to_string(v.left.z) + ") * (" + K.to_string(v.right.x) + "," + K.to_string(v.right.y) + "," +
                    K.to_string(v.right.z) + ")");
  }
  return G;
}

GroupSpec conjugate_spec(const GroupSpec& G, const GroupElem& h) {
  const FieldCtx& F = G.field();
  if (h.a.code || h.b.code || h.c.code)
    throw Error(ErrorKind::NotInModelForm, "conjugating element must fix the base point");
  GroupElem hi = g_inv(F, h);
  GroupSpec base = G;
  auto fn = [base, h, hi](FieldElem a, FieldElem b, FieldElem c) {
    const FieldCtx& K = base.field();
    AffinePoint Q = act(K, hi, {a, b, c});
    GroupElem g = g_mul(K, g_mul(K, hi, base.elem_at(Q)), h);
    if (g.a != a || g.b != b || g.c != c)
      throw Error(ErrorKind::NotInModelForm, "conjugate does not map the base point to (a,b,c)");
    return g;
  };
  return GroupSpec(G.field_ptr(), G.id() + "^h", fn, nullptr);
}

StandardConjugation standard_conjugation(const FieldCtx& F, const ConstructionParams& pre) {
  StandardConjugation out;
  out.h = g_identity();
  ConstructionParams& T = out.target;
  T.S1 = lp_normalize(F, pre.S1);
  T.self_check_samples = pre.self_check_samples;
  T.self_check_seed = pre.self_check_seed;
  const int l = subfield_degree(F, pre.variant);
  switch (pre.variant) {
    case Variant::PreS2: {
      FieldElem muC = need(pre.muC, "muC"), tC = need(pre.tC, "tC"), nuC = need(pre.nuC, "nuC");
      FieldElem u = artin_schreier_solve(F, F.sub(nuC, lp_eval(F, T.S1, tC)), l);
      out.h.t = u;
      T.variant = Variant::S2;
      T.muC = F.div(muC, F.from_int(trace_int(F, F.mul(muC, tC))));
      break;
    }
    case Variant::PreS3: {
      FieldElem muB = need(pre.muB, "muB"), alpha = need(pre.alpha, "alpha");
      out.h.t = F.div(alpha, muB);
      T.variant = Variant::S3;
      T.muB = muB;
      break;
    }
    case Variant::PreS4: {
      FieldElem u = need(pre.u, "u"), muB = need(pre.muB, "muB"), tC = need(pre.tC, "tC");
      FieldElem alpha = need(pre.alpha, "alpha");
      FieldElem muC = F.sub(u, F.frob(u, l));
      int lamC = trace_int(F, F.mul(muC, tC));
      if (lamC == 0 || muB.code == 0) invalid("PreS4 parameters are degenerate");
      FieldElem rhs = F.add(F.scale(u, lamC), F.scale(muC, pre.lambda));
      FieldElem d = F.div(F.sub(F.sub(F.frob(alpha, l), alpha), rhs), muB);
      FieldElem u0 = artin_schreier_solve(F, d, l);
      int lam1 = trace_int(F, F.mul(muB, F.mul(u0, tC))) * fp_inv(lamC, F.p()) % F.p();
      FieldElem u1 = F.sub(u0, F.scale(F.div(muC, muB), lam1));
      out.h.t = u1;
      T.variant = Variant::S4;
      T.u = u;
      T.muB = muB;
      T.muC = muC;
      T.tC = tC;
      T.lambda = pre.lambda;
      T.alpha = F.sub(alpha, F.mul(u1, muB));
      break;
    }
    default:
      throw Error(ErrorKind::InvalidParams, "standard conjugation is defined for PreS2, PreS3 and PreS4");
  }
  return out;
}

ElementWalk::ElementWalk(const GroupSpec& G, const CheckMode& mode) : G_(G), mode_(mode), rng_(mode.seed) {
  std::uint64_t q = G.field().q();
  n_ = mode.exhaustive ? q * q * q : mode.samples;
  if (mode.exhaustive && n_ > cap_from_env("PGQ_ENUM_CAP", 20000000))
    throw Error(ErrorKind::CapExceeded, "enumerating " + std::to_string(n_) + " elements exceeds the cap");
}

std::optional<GroupElem> ElementWalk::next() {
  if (i_ >= n_) return std::nullopt;
  const FieldCtx& F = G_.field();
  ++i_;
  if (!mode_.exhaustive) {
    FieldElem a = rng_.elem(F), b = rng_.elem(F), c = rng_.elem(F);
    return G_.elem_at(a, b, c);
  }
  std::uint64_t k = i_ - 1, q = F.q();
  return G_.elem_at({std::uint32_t(k / (q * q))}, {std::uint32_t(k / q % q)}, {std::uint32_t(k % q)});
}

}  // namespace pgq
