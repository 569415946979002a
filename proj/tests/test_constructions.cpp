#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pgq/constructions.hpp"

using namespace pgq;

namespace {

LinPoly mono(const FieldCtx& F, std::initializer_list<int> exps) {
  LinPoly f = lp_zero(F);
  for (int e : exps) f.s[e] = F.add(f.s[e], F.one());
  return f;
}

FieldElem x_gen(const FieldCtx& F) { return F.fp_basis().size() > 1 ? F.fp_basis()[1] : F.one(); }

ConstructionParams s2(const FieldCtx& F, LinPoly S) {
  ConstructionParams P;
  P.variant = Variant::S2;
  P.S1 = std::move(S);
  P.muC = F.one();
  return P;
}

ConstructionParams s3(const FieldCtx& F, LinPoly S) {
  ConstructionParams P;
  P.variant = Variant::S3;
  P.S1 = std::move(S);
  P.muB = F.one();
  return P;
}

void require_group_law(const GroupSpec& G, std::uint64_t samples, std::uint64_t seed = 1) {
  CheckMode m;
  m.exhaustive = false;
  m.samples = samples;
  m.seed = seed;
  auto rep = check_theorem_main(G, m);
  INFO(G.id());
  CHECK(rep.pass);
}

// Identities that hold in any point-regular model, checked on free variables.
void check_identities(const GroupSpec& G, int samples) {
  const FieldCtx& F = G.field();
  const FieldElem z0 = F.zero();
  Rng rng(77);
  auto fr = [&](FieldElem x, Frob f) { return F.frob(x, f); };
  for (int k = 0; k < samples; ++k) {
    FieldElem a = rng.elem(F), b = rng.elem(F), c = rng.elem(F), y = rng.elem(F), z = rng.elem(F);
    // (1) L(a)^{theta_{x00}} + L(x) = L(a^{theta_x00} + x)
    FieldElem x = rng.elem(F);
    Frob tx = G.theta(x, z0, z0);
    CHECK(F.add(fr(G.L(a), tx), G.L(x)) == G.L(F.add(fr(a, tx), x)));
    // (2) M(b)^{theta_{0y0}} + M(y) = M(b^{theta_0y0} + y)
    Frob ty = G.theta(z0, y, z0);
    CHECK(F.add(fr(G.M(b), ty), G.M(y)) == G.M(F.add(fr(b, ty), y)));
    // (3)
    Frob sz = G.sigma(z);
    FieldElem cs = fr(c, sz);
    FieldElem u = F.neg(F.mul(F.mul(cs, z), G.S(z))), v = F.mul(cs, G.S(z)), w = F.add(cs, z);
    CHECK(F.compose(G.sigma(c), sz) == G.theta(u, v, w));
    CHECK(F.add(fr(G.S(c), sz), G.S(z)) == G.T(u, v, w));
    // (4)
    Frob tb = G.theta(z0, b, z0);
    CHECK(F.compose(G.theta(a, z0, z0), tb) == G.theta(fr(a, tb), b, z0));
    CHECK(F.add(fr(G.L(a), tb), G.M(b)) == G.T(fr(a, tb), b, z0));
    // (5)
    Frob ta = G.theta(a, z0, z0);
    CHECK(F.compose(tb, ta) == G.theta(a, fr(b, ta), z0));
    CHECK(F.add(G.L(a), fr(G.M(b), ta)) == G.T(a, fr(b, ta), z0));
    // (6) g_abc = g_{a'b'0} g_{00c}
    Frob sc = G.sigma(c), sci = F.inverse(sc);
    FieldElem a1 = fr(F.add(a, F.mul(b, c)), sci), b1 = fr(b, sci);
    CHECK(G.theta(a, b, c) == F.compose(G.theta(a1, b1, z0), sc));
    CHECK(G.T(a, b, c) == F.add(fr(G.T(a1, b1, z0), sc), G.S(c)));
    // (7) g_{00c} g_{ab0} = g_{uv0} g_{00w}
    Frob tab = G.theta(a, b, z0);
    FieldElem ct = fr(c, tab);
    FieldElem w7 = ct;
    Frob swi = F.inverse(G.sigma(w7));
    FieldElem Tab = G.T(a, b, z0);
    FieldElem v7 = fr(F.add(b, F.mul(ct, Tab)), swi);
    FieldElem u7 = fr(F.add(F.add(a, F.mul(F.from_int(2), F.mul(b, ct))), F.mul(F.mul(ct, ct), Tab)), swi);
    CHECK(F.compose(sc, tab) == F.compose(G.theta(u7, v7, z0), G.sigma(w7)));
    CHECK(F.add(fr(G.S(c), tab), Tab) == F.add(fr(G.T(u7, v7, z0), G.sigma(w7)), G.S(w7)));
  }
}

}  // namespace

TEST_CASE("Construction 1 satisfies the group law exhaustively for small q") {
  for (const char* spec : {"5", "7", "3^2", "2^3"}) {
    auto F = FieldCtx::parse(spec);
    for (int e = 0; e < F->m(); ++e) {
      ConstructionParams P;
      P.S1 = lp_monomial(*F, e, x_gen(*F));
      GroupSpec G = build_construction(F, P);
      CHECK(check_theorem_main(G, CheckMode::parse("exhaustive")).pass);
    }
  }
}

TEST_CASE("odd twisted constructions at q = 27") {
  auto F = FieldCtx::parse("3^3");
  std::vector<GroupSpec> specs;
  for (auto S : {lp_zero(*F), mono(*F, {0}), mono(*F, {1})}) specs.push_back(build_construction(F, s2(*F, S)));
  for (auto S : {lp_zero(*F), mono(*F, {0}), mono(*F, {1, 2})}) specs.push_back(build_construction(F, s3(*F, S)));
  for (auto& G : specs) {
    require_group_law(G, 200000);
    check_identities(G, 2000);
  }
  // S_1 = X^3 breaks the symmetry condition for S3 at q = 27
  try {
    build_construction(F, s3(*F, mono(*F, {1})));
    FAIL("expected InvalidParams");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParams);
  }
}

TEST_CASE("S3 bilinear form is symmetric for every admissible tuple at q = 27") {
  auto F = FieldCtx::parse("3^3");
  TupleParams tp;
  tp.mu_B = F->one();
  auto sols = solve_construction_tuple(F, TupleKind::S1Symmetric, tp);
  while (auto t = sols.next()) {
    LinPoly S{t->s};
    for (std::uint32_t c = 0; c < 27; ++c)
      for (std::uint32_t z = 0; z < 27; ++z)
        REQUIRE(trace(*F, F->mul({c}, lp_eval(*F, S, {z}))) == trace(*F, F->mul({z}, lp_eval(*F, S, {c}))));
  }
}

TEST_CASE("pre-forms at q = 27 are groups") {
  auto F = FieldCtx::parse("3^3");
  auto P2 = make_pre_s2_params(*F, mono(*F, {0}), F->one(), x_gen(*F));
  GroupSpec G2 = build_construction(F, P2);
  require_group_law(G2, 200000);
  check_identities(G2, 2000);

  ConstructionParams P3 = s3(*F, mono(*F, {0}));
  P3.variant = Variant::PreS3;
  P3.alpha = x_gen(*F);
  GroupSpec G3 = build_construction(F, P3);
  require_group_law(G3, 200000);
  check_identities(G3, 2000);
}

TEST_CASE("even construction") {
  for (int m : {3, 4}) {
    auto F = FieldCtx::make(2, m);
    TupleParams tp;
    tp.omega = F->primitive();
    tp.mu = F->one();
    auto sols = solve_construction_tuple(F, TupleKind::EvenF, tp);
    int built = 0;
    while (auto t = sols.next()) {
      ConstructionParams P;
      P.variant = Variant::C2even;
      P.omega = tp.omega;
      P.mu = tp.mu;
      P.f = t->f;
      P.s0 = t->s[0];
      GroupSpec G = build_construction(F, P);
      if (built++ < 3) CHECK(check_theorem_main(G, CheckMode::parse(m == 3 ? "exhaustive" : "sample:200000:3")).pass);
      if (built > 6) break;
    }
    CHECK(built > 0);
  }
}

TEST_CASE("S4 parameters and group law at q = 3^9") {
  auto F = FieldCtx::parse("3^9");
  S4SearchOptions opt;
  auto P = search_s4_params(F, opt);
  GroupSpec G = build_construction(F, P);
  require_group_law(G, 100000);
  check_identities(G, 500);
  // T(x,y,z) = S_1(z) on the whole group
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    FieldElem x = rng.elem(*F), y = rng.elem(*F), z = rng.elem(*F);
    CHECK(G.T(x, y, z) == lp_eval(*F, P.S1, z));
  }
}

TEST_CASE("PreS4 at q = 3^9 is a group") {
  auto F = FieldCtx::parse("3^9");
  auto P = search_s4_params(F, {});
  P.variant = Variant::PreS4;
  P.alpha = F->primitive();
  P.lambda = 1;
  GroupSpec G = build_construction(F, P);
  require_group_law(G, 100000);
}

TEST_CASE("conjugation brings pre-forms to normal form") {
  auto F = FieldCtx::parse("3^3");
  auto P2 = make_pre_s2_params(*F, mono(*F, {0}), F->from_int(2), x_gen(*F));
  GroupSpec pre = build_construction(F, P2);
  auto sc = standard_conjugation(*F, P2);
  GroupSpec conj = conjugate_spec(pre, sc.h);
  GroupSpec target = build_construction(F, sc.target);
  std::uint64_t diff = 0;
  for (std::uint32_t a = 0; a < 27; ++a)
    for (std::uint32_t b = 0; b < 27; ++b)
      for (std::uint32_t c = 0; c < 27; ++c) diff += !(conj.elem_at({a}, {b}, {c}) == target.elem_at({a}, {b}, {c}));
  CHECK(diff == 0);

  ConstructionParams P3 = s3(*F, mono(*F, {1, 2}));
  P3.variant = Variant::PreS3;
  P3.alpha = F->from_coeffs(std::vector<int>{1, 2, 1});
  GroupSpec pre3 = build_construction(F, P3);
  auto sc3 = standard_conjugation(*F, P3);
  GroupSpec conj3 = conjugate_spec(pre3, sc3.h);
  GroupSpec target3 = build_construction(F, sc3.target);
  diff = 0;
  for (std::uint32_t a = 0; a < 27; ++a)
    for (std::uint32_t b = 0; b < 27; ++b)
      for (std::uint32_t c = 0; c < 27; ++c) diff += !(conj3.elem_at({a}, {b}, {c}) == target3.elem_at({a}, {b}, {c}));
  CHECK(diff == 0);

  GroupElem bad{F->one(), F->zero(), F->zero(), F->zero(), {0}};
  try {
    conjugate_spec(pre, bad);
    FAIL("expected NotInModelForm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInModelForm);
  }
}

TEST_CASE("PreS4 conjugates to S4 on samples") {
  auto F = FieldCtx::parse("3^9");
  auto P = search_s4_params(F, {});
  P.variant = Variant::PreS4;
  P.alpha = F->primitive();
  P.lambda = 2;
  GroupSpec pre = build_construction(F, P);
  auto sc = standard_conjugation(*F, P);
  GroupSpec conj = conjugate_spec(pre, sc.h);
  GroupSpec target = build_construction(F, sc.target);
  Rng rng(8);
  for (int k = 0; k < 10000; ++k) {
    FieldElem a = rng.elem(*F), b = rng.elem(*F), c = rng.elem(*F);
    REQUIRE(conj.elem_at(a, b, c) == target.elem_at(a, b, c));
  }
}

TEST_CASE("parameter validation") {
  auto F = FieldCtx::parse("3^3");
  auto P = s2(*F, mono(*F, {0}));
  P.muC = F->zero();
  CHECK_THROWS_AS(build_construction(F, P), Error);
  P.muC = x_gen(*F);  // not in F_3
  CHECK_THROWS_AS(build_construction(F, P), Error);
  auto Q = s2(*F, lp_monomial(*F, 0, x_gen(*F)));  // coefficient outside F_3
  CHECK_THROWS_AS(build_construction(F, Q), Error);
  auto F5 = FieldCtx::parse("5");
  CHECK_THROWS_AS(build_construction(F5, s2(*F5, lp_zero(*F5))), Error);
}

TEST_CASE("element walk") {
  auto F = FieldCtx::parse("3");
  ConstructionParams P;
  GroupSpec G = build_construction(F, P);
  ElementWalk w(G, CheckMode::parse("exhaustive"));
  std::set<std::uint64_t> seen;
  int n = 0;
  while (auto g = w.next()) {
    seen.insert(g->a.code * 9 + g->b.code * 3 + g->c.code);
    ++n;
  }
  CHECK(n == 27);
  CHECK(seen.size() == 27);

  auto F27 = FieldCtx::parse("3^3");
  GroupSpec G27 = build_construction(F27, P);
  ElementWalk w27(G27, CheckMode::parse("exhaustive"));
  std::set<std::uint64_t> keys;
  KeyCodec codec(*F27);
  auto first = w27.next();
  CHECK(*first == g_identity());
  keys.insert(codec.pack(*first));
  while (auto g = w27.next()) keys.insert(codec.pack(*g));
  CHECK(keys.size() == 19683);

  GroupSpec big = build_unchecked(FieldCtx::parse("3^9"), P);
  CHECK_THROWS_AS(ElementWalk(big, CheckMode::parse("exhaustive")), Error);
  CHECK_NOTHROW(ElementWalk(big, CheckMode::parse("sample:10:1")));
}
