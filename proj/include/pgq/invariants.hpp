// Exponent, center, central series, Thompson subgroup and point-regularity checks.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgq/constructions.hpp"
#include "pgq/quadrangle.hpp"

namespace pgq {

// Runs f(i) for i in [0, n) on `workers` threads; f must only write to slot i of its outputs.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f);

struct ExponentReport {
  std::uint64_t value = 1;  // exact when `exact`, otherwise a certified lower bound (lcm of sampled orders)
  bool exact = false;
  std::uint64_t scanned = 0;
  std::optional<std::uint64_t> predicted;  // from the exponent theorem when it applies
};

// Theorem value for C1/S2/S3/S4 and the even exponent-4 rule; nullopt for other variants.
std::optional<std::uint64_t> predicted_exponent(const GroupSpec& G);
// Full scan when q <= full_scan_max_q, else lcm over generators and `samples` random elements.
ExponentReport exponent(const GroupSpec& G, std::uint64_t samples = 10000, std::uint64_t seed = 1,
                        std::uint64_t full_scan_max_q = 27, int workers = 1);

// Closure of the basis generators; CapExceeded past `cap` or past q^3 elements.
SubgroupSet materialize(const GroupSpec& G, std::size_t cap = std::size_t(1) << 22);

// Elements of `universe` commuting with every basis generator.
std::vector<GroupElem> center(const GroupSpec& G, const SubgroupSet& universe);
// Elements of `universe` commuting with g.
std::vector<GroupElem> centralizer(const FieldCtx& F, const GroupElem& g, const SubgroupSet& universe);

// Certificate that the basis generators generate all q^3 elements. Uses full closure when
// q^3 <= closure_cap, else the G_A-coset count: the a-basis generates G_A = {(E(a,0,0,0),1)},
// the (b,c) coordinates label the right cosets of G_A, and the coset orbit must reach q^2.
struct GenerationCertificate {
  bool generates = false;
  std::string method;
  std::uint64_t reached = 0;
  std::string failure;
};
GenerationCertificate certify_generation(const GroupSpec& G, std::size_t closure_cap = 1u << 20);

struct CentralSeries {
  enum class Kind { Lower, Upper } kind = Kind::Lower;
  std::vector<std::uint64_t> orders;  // gamma_1.. (lower, gamma_1 = |G|) or Z_0.. (upper)
  int cls = -1;                       // -1: unknown
  std::string unknown_reason;
  bool gamma2_frobenius_trivial = true;
  std::optional<GenerationCertificate> generation;
};

// gamma_{i+1} = normal closure of {[x, s]} over generators x of gamma_i and basis generators s.
// Each term must stay within `cap` elements (CapExceeded otherwise).
CentralSeries lower_central_series(const GroupSpec& G, std::size_t cap = 16000000);
// Z_{i+1} = {g in universe : [g, s] in Z_i for all basis generators s}. `universe` must be all of G.
CentralSeries upper_central_series_small(const GroupSpec& G, const SubgroupSet& universe,
                                         std::vector<std::vector<GroupElem>>* terms = nullptr);

// {g_{a,b,c} : a in A, b in B, c in C} for F_p-subspaces A, B, C of F_q.
struct LevelClaim {
  FpSubspace A, B, C;
  std::string text;
  bool member(const FieldCtx& F, const GroupElem& g) const;
  GroupElem sample(const GroupSpec& G, Rng& rng) const;
  bool is_everything() const;
};

struct ClaimLevelReport {
  int level = 0;
  bool closed = true, commutators_inside = true, maximal = true;
  std::uint64_t members_checked = 0, outsiders_checked = 0;
  std::string witness;
};

struct ClaimReport {
  bool pass = true;
  std::vector<ClaimLevelReport> levels;
};

// claims[i] is the claimed Z_{i+1}; Z_0 = 1. Per level, on sampled members: closure under products
// and inverses, [Z_{i+1}, s] in Z_i for basis generators s; maximality on samples of the next level
// (or all of G at the top): every outsider has some [g, s] outside Z_i.
ClaimReport verify_central_series_claim(const GroupSpec& G, const std::vector<LevelClaim>& claims,
                                        std::uint64_t samples, std::uint64_t seed);

// R_i = (1 - g)^i(F_q) with g(x) = x^{p^l}.
FpSubspace r_space(const FieldCtx& F, int l, int i);
// Upper central series of an S2 group with muC = 1 and l > 1:
// case 1: S_1 = 0; case 2: S_1 = z^{p^k}, l not dividing k; case 3: S_1 = (1-g)^k(z), 1 <= k <= p-1.
std::vector<LevelClaim> s2_upper_series_claims(const FieldCtx& F, int example_case, int k);

struct ThompsonResult {
  std::optional<std::uint64_t> order;  // set when the certificate succeeds
  std::uint64_t candidate_order = 0;
  bool candidate_abelian = false;
  bool degree_precondition = false;  // 1 < deg(S_1) < q/p
  std::vector<GroupElem> offending;  // elements outside A with |C(x)| >= |A|
  std::string reason;
};

// Certificate for J(G) = A = {g_{a,b,0} : theta_{a,b,0} = 1}: A abelian and every x outside A has
// |C_G(x)| < |A|. Centralizer orders come from conjugacy-class sizes. An abelian G gives J(G) = G.
ThompsonResult thompson(const GroupSpec& G, const SubgroupSet& universe);

struct RegularityReport {
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t group_order = 0, orbit_size = 0, lines_checked = 0, samples = 0;
  std::string failure;
};

// Exhaustive: the basis generators close to exactly q^3 elements, the orbit of the origin has size
// q^3, and each element is the model element at its image. Sampled: no two sampled triples share an
// image. If `qp` is given, sampled elements must preserve sampled lines of both types.
RegularityReport verify_point_regular(const GroupSpec& G, const Quadrangle* qp, const CheckMode& mode,
                                      std::uint64_t line_samples = 1000);

}  // namespace pgq
