#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "pgq/constructions.hpp"
#include "pgq/group.hpp"

using namespace pgq;

namespace {

ETuple tup(const FieldCtx& F, int a, int b, int c, int t) {
  return {F.from_int(a), F.from_int(b), F.from_int(c), F.from_int(t)};
}

ETuple random_tuple(const FieldCtx& F, Rng& rng) { return {rng.elem(F), rng.elem(F), rng.elem(F), rng.elem(F)}; }

GroupElem random_elem(const FieldCtx& F, Rng& rng) {
  auto x = random_tuple(F, rng);
  return {x.a, x.b, x.c, x.t, {int(rng.below(F.m()))}};
}

// (E, s) as a semilinear map: dense check of act against the row-vector product
std::array<FieldElem, 4> dense_act(const FieldCtx& F, const GroupElem& g, const AffinePoint& P) {
  std::array<FieldElem, 4> v{F.frob(P.x, g.phi), F.frob(P.y, g.phi), F.frob(P.z, g.phi), F.one()};
  return oracle::row_times(F, v, oracle::e_matrix(F, g.e()));
}

}  // namespace

TEST_CASE("E-matrix product and inverse agree with dense 4x4 matrices") {
  for (const char* spec : {"5", "3^2", "3^3", "3^6", "2^3"}) {
    auto F = FieldCtx::parse(spec);
    Rng rng(42);
    for (int k = 0; k < 10000; ++k) {
      ETuple x = random_tuple(*F, rng), y = random_tuple(*F, rng);
      auto dense = oracle::mat_mul(*F, oracle::e_matrix(*F, x), oracle::e_matrix(*F, y));
      REQUIRE(oracle::e_matrix(*F, e_mul(*F, x, y)) == dense);
      REQUIRE(oracle::is_identity(*F, oracle::mat_mul(*F, oracle::e_matrix(*F, x), oracle::e_matrix(*F, e_inv(*F, x)))));
    }
  }
}

TEST_CASE("E-matrix worked values over F_5") {
  auto F = FieldCtx::parse("5");
  // dense product of E(1,2,3,4) and E(4,3,2,1) has last row (4,3,0,1) and t = 0
  CHECK(e_mul(*F, tup(*F, 1, 2, 3, 4), tup(*F, 4, 3, 2, 1)) == tup(*F, 4, 3, 0, 0));
  CHECK(e_inv(*F, tup(*F, 1, 2, 3, 4)) == tup(*F, 4, 0, 2, 1));
}

TEST_CASE("group law: associativity, inverses, action homomorphism") {
  for (const char* spec : {"3^3", "2^4", "5^2"}) {
    auto F = FieldCtx::parse(spec);
    Rng rng(9);
    for (int k = 0; k < 3000; ++k) {
      GroupElem g = random_elem(*F, rng), h = random_elem(*F, rng), w = random_elem(*F, rng);
      REQUIRE(g_mul(*F, g_mul(*F, g, h), w) == g_mul(*F, g, g_mul(*F, h, w)));
      REQUIRE(g_mul(*F, g, g_inv(*F, g)) == g_identity());
      REQUIRE(g_mul(*F, g_inv(*F, g), g) == g_identity());
      AffinePoint P{rng.elem(*F), rng.elem(*F), rng.elem(*F)};
      REQUIRE(act(*F, g_mul(*F, g, h), P) == act(*F, h, act(*F, g, P)));
      auto d = dense_act(*F, g, P);
      AffinePoint Q = act(*F, g, P);
      REQUIRE(d[0] == Q.x);
      REQUIRE(d[1] == Q.y);
      REQUIRE(d[2] == Q.z);
      REQUIRE(d[3] == F->one());
      REQUIRE(g_pow(*F, g, 5) == g_mul(*F, g_mul(*F, g_mul(*F, g, g), g_mul(*F, g, g)), g));
      REQUIRE(g_pow(*F, g, -2) == g_inv(*F, g_mul(*F, g, g)));
      GroupElem c = commutator(*F, g, h);
      REQUIRE(g_mul(*F, g, h) == g_mul(*F, g_mul(*F, h, g), c));
    }
  }
}

TEST_CASE("element text round trip") {
  auto F = FieldCtx::parse("3^3");
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    GroupElem g = random_elem(*F, rng);
    CHECK(elem_from_string(*F, elem_to_string(*F, g)) == g);
  }
  GroupElem g{F->one(), F->zero(), F->from_int(2), F->zero(), {1}};
  CHECK(elem_to_string(*F, g) == "a=[1,0,0];b=[0,0,0];c=[2,0,0];t=[0,0,0];f=1");
  CHECK_THROWS(elem_from_string(*F, "a=[1];b=[0]"));
}

TEST_CASE("p-th power of g_{0,0,1} for S_1 = X over F_27") {
  auto F = FieldCtx::parse("3^3");
  ConstructionParams P;
  P.variant = Variant::C1;
  P.S1 = lp_identity(*F);
  GroupSpec G = build_construction(F, P);
  GroupElem g = G.elem_at(F->zero(), F->zero(), F->one());
  GroupElem cube = g_pow(*F, g, 3);
  // x = -((p^2-1) p / 6) c^2 S_1(c) = -4 = 2
  CHECK(cube == G.elem_at(F->from_int(2), F->zero(), F->zero()));
  CHECK(element_order(*F, g) == 9);
}

TEST_CASE("Dimino closure and normal closure") {
  auto F = FieldCtx::parse("3^2");
  ConstructionParams P;
  P.S1 = lp_identity(*F);
  GroupSpec G = build_construction(F, P);
  auto H = SubgroupSet::closure(F, G.basis_generators(), 1u << 20);
  CHECK(H.size() == 729);
  // every element lies in the model
  for (auto& g : H.elements()) CHECK(G.elem_at(g.a, g.b, g.c) == g);
  // the subgroup generated by g_{0,0,1} is cyclic of order 9
  auto C = SubgroupSet::closure(F, {G.elem_at(F->zero(), F->zero(), F->one())}, 1000);
  CHECK(C.size() == 9);
  // normal closure of it contains its conjugates
  C.make_normal(G.basis_generators());
  for (auto& g : C.elements())
    for (auto& s : G.basis_generators()) CHECK(C.contains(g_conj(*F, g, s)));
  auto small = SubgroupSet(F, 5);
  CHECK_THROWS_AS(small.add_generator(G.elem_at(F->zero(), F->zero(), F->one())), Error);
}

TEST_CASE("theorem main check catches a broken T") {
  auto F = FieldCtx::parse("5");
  ConstructionParams P;
  P.variant = Variant::Raw;
  P.raw_T = {F->zero(), F->zero(), F->one()};  // T = c^2
  GroupSpec bad = build_construction(F, P);
  auto rep = check_theorem_main(bad, CheckMode::parse("exhaustive"));
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->what == "T");

  ConstructionParams ok;
  ok.S1 = lp_identity(*F);
  auto rep2 = check_theorem_main(build_construction(F, ok), CheckMode::parse("exhaustive"));
  CHECK(rep2.pass);
  CHECK(rep2.pairs_checked == 125u * 125u);
}

TEST_CASE("check mode parsing") {
  auto m = CheckMode::parse("sample:1000:42");
  CHECK_FALSE(m.exhaustive);
  CHECK(m.samples == 1000);
  CHECK(m.seed == 42);
  CHECK(CheckMode::parse("sample:10:seed7").seed == 7);
  CHECK(CheckMode::parse("exhaustive").exhaustive);
  CHECK_THROWS(CheckMode::parse("sample:x:1"));
  CHECK_THROWS(CheckMode::parse("all"));
}

TEST_CASE("key set") {
  KeySet s;
  for (std::uint64_t k = 0; k < 100000; ++k) CHECK(s.insert(k * 7919));
  CHECK(s.size() == 100000);
  CHECK_FALSE(s.insert(7919));
  CHECK(s.contains(0));
  CHECK_FALSE(s.contains(1));
}
