#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pgq/gf.hpp"

namespace pgq {

// The unipotent matrix E(a,b,c,t):
//   [ 1      0 0 0 ]
//   [ -c     1 0 0 ]
//   [ b-ct   t 1 0 ]
//   [ a      b c 1 ]
struct ETuple {
  FieldElem a, b, c, t;
  friend bool operator==(const ETuple&, const ETuple&) = default;
};

ETuple e_mul(const FieldCtx& F, const ETuple& x, const ETuple& y);
ETuple e_inv(const FieldCtx& F, const ETuple& x);
ETuple e_frob(const FieldCtx& F, const ETuple& x, Frob s);

// (E(a,b,c,t), phi) acting on row vectors by x -> x^phi E.
struct GroupElem {
  FieldElem a, b, c, t;
  Frob phi;
  friend bool operator==(const GroupElem&, const GroupElem&) = default;
  ETuple e() const { return {a, b, c, t}; }
};

struct AffinePoint {
  FieldElem x, y, z;
  friend auto operator<=>(const AffinePoint&, const AffinePoint&) = default;
};

GroupElem g_identity();
GroupElem g_mul(const FieldCtx& F, const GroupElem& g, const GroupElem& h);
GroupElem g_inv(const FieldCtx& F, const GroupElem& g);
GroupElem g_pow(const FieldCtx& F, const GroupElem& g, long long n);
GroupElem g_conj(const FieldCtx& F, const GroupElem& g, const GroupElem& h);  // h^-1 g h
GroupElem commutator(const FieldCtx& F, const GroupElem& g, const GroupElem& h);  // g^-1 h^-1 g h
bool g_commute(const FieldCtx& F, const GroupElem& g, const GroupElem& h);
std::uint64_t element_order(const FieldCtx& F, const GroupElem& g, std::uint64_t cap = 1u << 30);
// act(g h, P) = act(h, act(g, P))
AffinePoint act(const FieldCtx& F, const GroupElem& g, const AffinePoint& P);

std::string elem_to_string(const FieldCtx& F, const GroupElem& g);
GroupElem elem_from_string(const FieldCtx& F, std::string_view s);

// Packed canonical key (a, b, c, t, phi) for hashing.
class KeyCodec {
 public:
  explicit KeyCodec(const FieldCtx& F);
  std::uint64_t pack(const GroupElem& g) const {
    return std::uint64_t(g.a.code) | (std::uint64_t(g.b.code) << w_) | (std::uint64_t(g.c.code) << (2 * w_)) |
           (std::uint64_t(g.t.code) << (3 * w_)) | (std::uint64_t(g.phi.exp) << (4 * w_));
  }
  GroupElem unpack(std::uint64_t k) const {
    GroupElem g;
    g.a.code = std::uint32_t(k & mask_);
    g.b.code = std::uint32_t((k >> w_) & mask_);
    g.c.code = std::uint32_t((k >> (2 * w_)) & mask_);
    g.t.code = std::uint32_t((k >> (3 * w_)) & mask_);
    g.phi.exp = int(k >> (4 * w_));
    return g;
  }
  std::uint64_t point_key(FieldElem a, FieldElem b, FieldElem c) const {
    return std::uint64_t(a.code) | (std::uint64_t(b.code) << w_) | (std::uint64_t(c.code) << (2 * w_));
  }

 private:
  int w_;
  std::uint64_t mask_;
};

// Open-addressing set of nonzero-able 64-bit keys (all values allowed).
class KeySet {
 public:
  explicit KeySet(std::size_t expected = 16);
  bool insert(std::uint64_t k);  // true if newly inserted
  bool contains(std::uint64_t k) const;
  std::size_t size() const { return size_; }
  void clear();

 private:
  void grow();
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }
  std::vector<std::uint64_t> slots_;
  std::vector<std::uint8_t> used_;
  std::size_t size_ = 0, mask_ = 0;
};

// deterministic RNG; reductions are done by hand so streams agree across standard libraries
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  std::uint64_t below(std::uint64_t n) { return n ? g_() % n : 0; }
  FieldElem elem(const FieldCtx& F) { return {std::uint32_t(below(F.q()))}; }

 private:
  std::mt19937_64 g_;
};

struct ConstructionParams;

// A point-regular model: one element g_{a,b,c} per affine point (a,b,c).
class GroupSpec {
 public:
  using ElemFn = std::function<GroupElem(FieldElem, FieldElem, FieldElem)>;

  GroupSpec(FieldPtr F, std::string id, ElemFn fn, std::shared_ptr<const ConstructionParams> params = nullptr)
      : F_(std::move(F)), id_(std::move(id)), fn_(std::move(fn)), params_(std::move(params)) {}

  const FieldCtx& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }
  const std::string& id() const { return id_; }
  const ConstructionParams* params() const { return params_.get(); }
  std::shared_ptr<const ConstructionParams> params_ptr() const { return params_; }

  GroupElem elem_at(FieldElem a, FieldElem b, FieldElem c) const { return fn_(a, b, c); }
  GroupElem elem_at(const AffinePoint& P) const { return fn_(P.x, P.y, P.z); }
  FieldElem T(FieldElem a, FieldElem b, FieldElem c) const { return fn_(a, b, c).t; }
  Frob theta(FieldElem a, FieldElem b, FieldElem c) const { return fn_(a, b, c).phi; }
  FieldElem L(FieldElem x) const { return T(x, F_->zero(), F_->zero()); }
  FieldElem M(FieldElem y) const { return T(F_->zero(), y, F_->zero()); }
  FieldElem S(FieldElem z) const { return T(F_->zero(), F_->zero(), z); }
  Frob sigma(FieldElem c) const { return theta(F_->zero(), F_->zero(), c); }

  // g over (b_i,0,0), (0,b_i,0), (0,0,b_i) for the F_p-basis b_i
  std::vector<GroupElem> basis_generators() const;
  std::uint64_t order() const { return std::uint64_t(F_->q()) * F_->q() * F_->q(); }

 private:
  FieldPtr F_;
  std::string id_;
  ElemFn fn_;
  std::shared_ptr<const ConstructionParams> params_;
};

// Closed subset of group elements, grown one generator at a time (Dimino's coset method).
class SubgroupSet {
 public:
  SubgroupSet(FieldPtr F, std::size_t cap);
  static SubgroupSet closure(FieldPtr F, const std::vector<GroupElem>& gens, std::size_t cap);

  const FieldCtx& field() const { return *F_; }
  std::size_t size() const { return keys_.size(); }
  bool contains(const GroupElem& g) const { return set_.contains(codec_.pack(g)); }
  GroupElem at(std::size_t i) const { return codec_.unpack(keys_[i]); }
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  std::vector<GroupElem> elements() const;
  const std::vector<GroupElem>& generators() const { return gens_; }
  const KeyCodec& codec() const { return codec_; }

  // Returns false if g was already inside. Throws CapExceeded past the cap.
  bool add_generator(const GroupElem& g);
  // Extend to the normal closure under conjugation by `conj`.
  void make_normal(const std::vector<GroupElem>& conj);

 private:
  void insert(const GroupElem& g);
  FieldPtr F_;
  std::size_t cap_;
  KeyCodec codec_;
  KeySet set_;
  std::vector<std::uint64_t> keys_;
  std::vector<GroupElem> gens_;
};

struct CheckMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  static CheckMode parse(std::string_view s);  // "exhaustive" | "sample:n:seed"
  std::string to_string() const;
};

struct TheoremMainViolation {
  AffinePoint left, right, product;
  std::string what;  // "theta" or "T"
};

struct TheoremMainReport {
  bool pass = true;
  std::uint64_t pairs_checked = 0;
  CheckMode mode;
  std::optional<TheoremMainViolation> violation;
};

// Checks theta_{abc} theta_{xyz} = theta_{uvw} and T(abc)^{theta_xyz} + T(xyz) = T(uvw)
// where (u,v,w) is the point reached by g_{abc} g_{xyz}.
TheoremMainReport check_theorem_main(const GroupSpec& G, const CheckMode& mode);

std::size_t cap_from_env(const char* name, std::size_t dflt);

}  // namespace pgq
