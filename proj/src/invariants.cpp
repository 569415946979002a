#include "pgq/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace pgq {

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& f) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const std::size_t chunk = std::max<std::size_t>(1, n / (std::size_t(workers) * 16));
  auto run = [&] {
    for (;;) {
      std::size_t lo = next.fetch_add(chunk);
      if (lo >= n) return;
      for (std::size_t i = lo; i < std::min(n, lo + chunk); ++i) f(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

namespace {

bool s1_nonzero_on_subfield(const FieldCtx& F, const LinPoly& S, int l) {
  for (std::uint32_t c = 1; c < F.q(); ++c)
    if (F.in_subfield({c}, l) && lp_eval(F, S, {c}).code) return true;
  return false;
}

}  // namespace

std::optional<std::uint64_t> predicted_exponent(const GroupSpec& G) {
  const ConstructionParams* P = G.params();
  if (!P) return std::nullopt;
  const FieldCtx& F = G.field();
  const std::uint64_t p = F.p();
  switch (P->variant) {
    case Variant::C1:
      if (p == 2) return lp_is_zero(P->S1) ? 2 : 4;
      return (p == 3 && !lp_is_zero(P->S1)) ? 9 : p;
    case Variant::C2even:
      return 4;
    case Variant::S2:
    case Variant::S3: {
      const int l = subfield_degree(F, P->variant);
      return (p == 3 && s1_nonzero_on_subfield(F, P->S1, l)) ? p * p * p : p * p;
    }
    case Variant::S4: {
      const int l = subfield_degree(F, P->variant);
      return s1_nonzero_on_subfield(F, P->S1, l) ? 81 : 27;
    }
    default:
      return std::nullopt;
  }
}

ExponentReport exponent(const GroupSpec& G, std::uint64_t samples, std::uint64_t seed, std::uint64_t full_scan_max_q,
                        int workers) {
  const FieldCtx& F = G.field();
  const std::uint64_t q = F.q();
  ExponentReport rep;
  rep.predicted = predicted_exponent(G);
  std::vector<GroupElem> elems;
  if (q <= full_scan_max_q) {
    rep.exact = true;
    elems.resize(q * q * q);
    for (std::uint64_t k = 0; k < elems.size(); ++k)
      elems[k] = G.elem_at({std::uint32_t(k / (q * q))}, {std::uint32_t(k / q % q)}, {std::uint32_t(k % q)});
  } else {
    elems = G.basis_generators();
    Rng rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) elems.push_back(G.elem_at(rng.elem(F), rng.elem(F), rng.elem(F)));
  }
  std::vector<std::uint64_t> orders(elems.size());
  parallel_for(elems.size(), workers, [&](std::size_t i) { orders[i] = element_order(F, elems[i]); });
  for (auto o : orders) rep.value = std::lcm(rep.value, o);
  rep.scanned = elems.size();
  return rep;
}

SubgroupSet materialize(const GroupSpec& G, std::size_t cap) {
  const std::size_t n = G.order();
  if (n > cap) throw Error(ErrorKind::CapExceeded, "group of order " + std::to_string(n) + " exceeds materialization cap");
  try {
    return SubgroupSet::closure(G.field_ptr(), G.basis_generators(), n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    throw Error(ErrorKind::CapExceeded, "basis generators generate more than q^3 elements");
  }
}

std::vector<GroupElem> center(const GroupSpec& G, const SubgroupSet& universe) {
  const FieldCtx& F = G.field();
  const auto S = G.basis_generators();
  std::vector<GroupElem> out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    GroupElem g = universe.at(i);
    bool central = true;
    for (const auto& s : S)
      if (!g_commute(F, g, s)) {
        central = false;
        break;
      }
    if (central) out.push_back(g);
  }
  return out;
}

std::vector<GroupElem> centralizer(const FieldCtx& F, const GroupElem& g, const SubgroupSet& universe) {
  std::vector<GroupElem> out;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    GroupElem h = universe.at(i);
    if (g_commute(F, g, h)) out.push_back(h);
  }
  return out;
}

GenerationCertificate certify_generation(const GroupSpec& G, std::size_t closure_cap) {
  const FieldCtx& F = G.field();
  const std::uint64_t q = F.q();
  GenerationCertificate cert;
  const auto S = G.basis_generators();
  if (q * q * q <= closure_cap) {
    cert.method = "closure";
    try {
      auto H = SubgroupSet::closure(G.field_ptr(), S, q * q * q);
      cert.reached = H.size();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      cert.failure = "closure exceeds q^3 elements";
      return cert;
    }
    cert.generates = cert.reached == q * q * q;
    if (!cert.generates) cert.failure = "closure has only " + std::to_string(cert.reached) + " elements";
    return cert;
  }
  cert.method = "G_A cosets";
  const int m = F.m();
  for (int i = 0; i < m; ++i) {
    const GroupElem& s = S[i];
    if (s.b.code || s.c.code || s.t.code || s.phi.exp) {
      cert.failure = "a-basis element is not of the form (E(a,0,0,0),1)";
      return cert;
    }
  }
  if (q * q > (std::uint64_t(1) << 32)) {
    cert.failure = "coset count q^2 too large";
    return cert;
  }
  std::vector<std::uint8_t> seen(q * q, 0);
  std::vector<std::uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t r = 0; r < queue.size(); ++r) {
    const std::uint32_t k = queue[r];
    GroupElem h = G.elem_at(F.zero(), {std::uint32_t(k % q)}, {std::uint32_t(k / q)});
    for (std::size_t j = std::size_t(m); j < S.size(); ++j) {
      GroupElem e = g_mul(F, h, S[j]);
      std::uint64_t key = e.b.code + q * e.c.code;
      if (!seen[key]) {
        seen[key] = 1;
        queue.push_back(std::uint32_t(key));
      }
    }
  }
  cert.reached = queue.size();
  cert.generates = cert.reached == q * q;
  if (!cert.generates) cert.failure = "coset orbit has " + std::to_string(cert.reached) + " of q^2 cosets";
  return cert;
}

CentralSeries lower_central_series(const GroupSpec& G, std::size_t cap) {
  const FieldCtx& F = G.field();
  CentralSeries cs;
  cs.kind = CentralSeries::Kind::Lower;
  const auto S = G.basis_generators();
  const std::uint64_t q = F.q();
  if (q * q > cap)
    throw Error(ErrorKind::CapExceeded, "generation certificate needs q^2 = " + std::to_string(q * q) +
                                            " cosets, above the cap of " + std::to_string(cap));
  cs.generation = certify_generation(G);
  cs.orders.push_back(G.order());
  if (!cs.generation->generates) {
    cs.unknown_reason = "basis generators not certified to generate G: " + cs.generation->failure;
    return cs;
  }
  std::vector<GroupElem> seeds;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      GroupElem c = commutator(F, S[i], S[j]);
      if (!(c == g_identity())) seeds.push_back(c);
    }
  for (int level = 2; level < 256; ++level) {
    SubgroupSet term(G.field_ptr(), cap);
    try {
      for (const auto& x : seeds) term.add_generator(x);
      term.make_normal(S);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      throw Error(ErrorKind::CapExceeded, "gamma_" + std::to_string(level) + " exceeds cap of " + std::to_string(cap));
    }
    if (level == 2)
      for (auto k : term.keys()) cs.gamma2_frobenius_trivial &= term.codec().unpack(k).phi.exp == 0;
    cs.orders.push_back(term.size());
    if (term.size() == 1) {
      cs.cls = level - 1;
      return cs;
    }
    seeds.clear();
    for (const auto& x : term.generators())
      for (const auto& s : S) {
        GroupElem c = commutator(F, x, s);
        if (!(c == g_identity())) seeds.push_back(c);
      }
  }
  cs.unknown_reason = "series did not terminate";
  return cs;
}

CentralSeries upper_central_series_small(const GroupSpec& G, const SubgroupSet& universe,
                                         std::vector<std::vector<GroupElem>>* terms) {
  const FieldCtx& F = G.field();
  const auto S = G.basis_generators();
  const KeyCodec& codec = universe.codec();
  CentralSeries cs;
  cs.kind = CentralSeries::Kind::Upper;
  const auto elems = universe.elements();
  KeySet Z;
  Z.insert(codec.pack(g_identity()));
  cs.orders.push_back(1);
  if (terms) terms->assign(1, {g_identity()});
  for (int level = 1; level < 256; ++level) {
    KeySet next;
    std::vector<GroupElem> members;
    for (const auto& g : elems) {
      bool ok = true;
      for (const auto& s : S)
        if (!Z.contains(codec.pack(commutator(F, g, s)))) {
          ok = false;
          break;
        }
      if (ok) {
        next.insert(codec.pack(g));
        members.push_back(g);
      }
    }
    if (next.size() == Z.size()) {
      cs.unknown_reason = "upper series stalls below the universe";
      return cs;
    }
    cs.orders.push_back(next.size());
    if (terms) terms->push_back(members);
    Z = std::move(next);
    if (Z.size() == universe.size()) {
      cs.cls = level;
      return cs;
    }
  }
  cs.unknown_reason = "series did not terminate";
  return cs;
}

bool LevelClaim::member(const FieldCtx& F, const GroupElem& g) const {
  return subspace_contains(F, A, g.a) && subspace_contains(F, B, g.b) && subspace_contains(F, C, g.c);
}

GroupElem LevelClaim::sample(const GroupSpec& G, Rng& rng) const {
  const FieldCtx& F = G.field();
  auto pick = [&](const FpSubspace& V) {
    std::vector<int> v(std::size_t(F.m()), 0);
    for (const auto& row : V.basis()) {
      int c = int(rng.below(F.p()));
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + c * row[i]) % F.p();
    }
    return from_fp_vector(F, v);
  };
  return G.elem_at(pick(A), pick(B), pick(C));
}

bool LevelClaim::is_everything() const {
  return A.dim() == A.ambient_dim() && B.dim() == B.ambient_dim() && C.dim() == C.ambient_dim();
}

ClaimReport verify_central_series_claim(const GroupSpec& G, const std::vector<LevelClaim>& claims,
                                        std::uint64_t samples, std::uint64_t seed) {
  const FieldCtx& F = G.field();
  const auto S = G.basis_generators();
  Rng rng(seed);
  ClaimReport rep;
  auto in_prev = [&](std::size_t i, const GroupElem& g) {
    return i == 0 ? g == g_identity() : claims[i - 1].member(F, g);
  };
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const LevelClaim& Z = claims[i];
    ClaimLevelReport lv;
    lv.level = int(i) + 1;
    auto note = [&](std::string w) {
      if (lv.witness.empty()) lv.witness = std::move(w);
    };
    for (std::uint64_t k = 0; k < samples; ++k) {
      GroupElem x = Z.sample(G, rng), y = Z.sample(G, rng);
      ++lv.members_checked;
      if (!Z.member(F, g_mul(F, x, y)) || !Z.member(F, g_inv(F, x))) {
        lv.closed = false;
        note("not closed at " + elem_to_string(F, x) + " * " + elem_to_string(F, y));
      }
      for (const auto& s : S)
        if (!in_prev(i, commutator(F, x, s))) {
          lv.commutators_inside = false;
          note("[x,s] leaves the previous level for x = " + elem_to_string(F, x));
          break;
        }
    }
    if (!Z.is_everything()) {
      const bool from_next = i + 1 < claims.size();
      for (std::uint64_t k = 0; k < samples; ++k) {
        GroupElem g = from_next ? claims[i + 1].sample(G, rng) : G.elem_at(rng.elem(F), rng.elem(F), rng.elem(F));
        if (Z.member(F, g)) continue;
        ++lv.outsiders_checked;
        bool escapes = false;
        for (const auto& s : S)
          if (!in_prev(i, commutator(F, g, s))) {
            escapes = true;
            break;
          }
        if (!escapes) {
          lv.maximal = false;
          note("outsider central modulo the previous level: " + elem_to_string(F, g));
          break;
        }
      }
    }
    rep.pass &= lv.closed && lv.commutators_inside && lv.maximal;
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

FpSubspace r_space(const FieldCtx& F, int l, int i) {
  return lp_image(F, one_minus_g_pow(F, l, i, lp_identity(F)));
}

std::vector<LevelClaim> s2_upper_series_claims(const FieldCtx& F, int example_case, int k) {
  const int p = F.p(), m = F.m();
  if (m % p) throw Error(ErrorKind::InvalidParams, "q must be p^{pl}");
  const int l = m / p;
  if (l <= 1) throw Error(ErrorKind::InvalidParams, "the series formulas need l > 1");
  const FpSubspace zero(p, m);
  auto R = [&](int i) { return r_space(F, l, i); };
  auto full = R(0);
  std::vector<LevelClaim> out;
  auto add = [&](FpSubspace A, FpSubspace B, FpSubspace C, std::string text) {
    out.push_back({std::move(A), std::move(B), std::move(C), std::move(text)});
  };
  for (int i = 1; i <= p; ++i) add(R(p - i), zero, zero, "a in R_" + std::to_string(p - i));
  switch (example_case) {
    case 1:
      for (int i = 1; i <= p; ++i)
        add(full, R(p - i), R(p - i), "a in F_q, b,c in R_" + std::to_string(p - i));
      break;
    case 2:
      for (int i = 1; i <= p; ++i) add(full, R(p - i), zero, "a in F_q, b in R_" + std::to_string(p - i) + ", c = 0");
      for (int i = 1; i <= p; ++i) add(full, full, R(p - i), "a,b in F_q, c in R_" + std::to_string(p - i));
      break;
    case 3:
      if (k < 1 || k > p - 1) throw Error(ErrorKind::InvalidParams, "k must be in [1, p-1]");
      for (int i = 1; i <= p - k; ++i)
        add(full, R(p - i), zero, "a in F_q, b in R_" + std::to_string(p - i) + ", c = 0");
      for (int j = 1; j <= k; ++j)
        add(full, R(k - j), R(p - j),
            "a in F_q, b in R_" + std::to_string(k - j) + ", c in R_" + std::to_string(p - j));
      for (int j = 1; j <= p - k; ++j)
        add(full, full, R(p - k - j), "a,b in F_q, c in R_" + std::to_string(p - k - j));
      break;
    default:
      throw Error(ErrorKind::InvalidParams, "example case must be 1, 2 or 3");
  }
  return out;
}

ThompsonResult thompson(const GroupSpec& G, const SubgroupSet& universe) {
  const FieldCtx& F = G.field();
  ThompsonResult res;
  if (const ConstructionParams* P = G.params()) {
    std::uint64_t d = lp_degree(F, P->S1);
    res.degree_precondition = d > 1 && d < F.q() / F.p();
  }
  const auto S = G.basis_generators();
  bool abelian = true;
  for (std::size_t i = 0; i < S.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) abelian &= g_commute(F, S[i], S[j]);
  if (abelian) {
    res.candidate_order = universe.size();
    res.candidate_abelian = true;
    res.order = universe.size();
    res.reason = "group is abelian";
    return res;
  }
  const auto elems = universe.elements();
  const KeyCodec& codec = universe.codec();
  std::vector<GroupElem> A;
  for (const auto& g : elems)
    if (g.c.code == 0 && g.phi.exp == 0) A.push_back(g);
  res.candidate_order = A.size();
  KeySet inA;
  for (const auto& g : A) inA.insert(codec.pack(g));
  res.candidate_abelian = true;
  for (std::size_t i = 0; i < A.size() && res.candidate_abelian; ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      GroupElem xy = g_mul(F, A[i], A[j]);
      if (!inA.contains(codec.pack(xy)) || !(xy == g_mul(F, A[j], A[i]))) {
        res.candidate_abelian = false;
        res.reason = "candidate set is not an abelian subgroup";
        break;
      }
    }
  if (!res.candidate_abelian) return res;

  // conjugacy classes by orbit search under the basis generators
  std::unordered_map<std::uint64_t, std::uint32_t> cls_size;
  cls_size.reserve(elems.size() * 2);
  const std::uint64_t n = elems.size();
  for (const auto& g : elems) {
    const std::uint64_t k0 = codec.pack(g);
    if (cls_size.count(k0)) continue;
    std::vector<GroupElem> orbit{g};
    KeySet seen;
    seen.insert(k0);
    for (std::size_t r = 0; r < orbit.size(); ++r)
      for (const auto& s : S) {
        GroupElem c = g_conj(F, orbit[r], s);
        if (seen.insert(codec.pack(c))) orbit.push_back(c);
      }
    for (const auto& x : orbit) cls_size[codec.pack(x)] = std::uint32_t(orbit.size());
  }
  for (const auto& g : elems) {
    const std::uint64_t k = codec.pack(g);
    if (inA.contains(k)) continue;
    const std::uint64_t cent = n / cls_size[k];
    if (cent >= A.size()) res.offending.push_back(g);
  }
  if (res.offending.empty()) {
    res.order = A.size();
  } else {
    res.reason = std::to_string(res.offending.size()) + " elements outside the candidate have centralizer order >= " +
                 std::to_string(A.size());
  }
  return res;
}

RegularityReport verify_point_regular(const GroupSpec& G, const Quadrangle* qp, const CheckMode& mode,
                                      std::uint64_t line_samples) {
  const FieldCtx& F = G.field();
  const std::uint64_t q = F.q();
  RegularityReport rep;
  rep.exhaustive = mode.exhaustive;
  const AffinePoint origin{F.zero(), F.zero(), F.zero()};
  KeyCodec codec(F);
  auto fail = [&](std::string msg) {
    rep.pass = false;
    if (rep.failure.empty()) rep.failure = std::move(msg);
  };
  Rng rng(mode.seed);
  if (mode.exhaustive) {
    std::optional<SubgroupSet> H;
    try {
      H.emplace(materialize(G, cap_from_env("PGQ_MATERIALIZE_CAP", std::size_t(1) << 22)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      fail(e.what());
      return rep;
    }
    rep.group_order = H->size();
    KeySet orbit(H->size());
    for (std::size_t i = 0; i < H->size(); ++i) {
      GroupElem g = H->at(i);
      AffinePoint P = act(F, g, origin);
      orbit.insert(codec.point_key(P.x, P.y, P.z));
      if (!(G.elem_at(P) == g)) fail("element " + elem_to_string(F, g) + " differs from the model element at its image");
    }
    rep.orbit_size = orbit.size();
    if (rep.group_order != q * q * q) fail("group order " + std::to_string(rep.group_order) + " differs from q^3");
    if (rep.orbit_size != rep.group_order) fail("orbit of the origin is smaller than the group");
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> image;
    image.reserve(mode.samples * 2);
    for (std::uint64_t k = 0; k < mode.samples; ++k) {
      FieldElem a = rng.elem(F), b = rng.elem(F), c = rng.elem(F);
      AffinePoint P = act(F, G.elem_at(a, b, c), origin);
      const std::uint64_t src = codec.point_key(a, b, c), dst = codec.point_key(P.x, P.y, P.z);
      auto [it, fresh] = image.emplace(dst, src);
      if (!fresh && it->second != src) fail("two sampled triples share an image");
      ++rep.samples;
    }
    rep.orbit_size = image.size();
  }
  if (qp) {
    for (std::uint64_t k = 0; k < line_samples; ++k) {
      GroupElem g = G.elem_at(rng.elem(F), rng.elem(F), rng.elem(F));
      auto L = std::uint32_t(rng.below(qp->lines.size()));
      ++rep.lines_checked;
      if (!preserves_line(F, *qp, g, L)) fail("element " + elem_to_string(F, g) + " does not preserve line " + std::to_string(L));
    }
  }
  return rep;
}

}  // namespace pgq
