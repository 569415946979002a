#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgq/error.hpp"

namespace pgq {

// An element of GF(p^m). The code is the base-p integer sum c_i p^i of the reduced
// coefficient vector, so it is canonical and doubles as a sort/hash key.
struct FieldElem {
  std::uint32_t code = 0;
  friend auto operator<=>(FieldElem, FieldElem) = default;
};

// x -> x^(p^exp). Composition adds exponents mod m.
struct Frob {
  int exp = 0;
  friend bool operator==(Frob, Frob) = default;
};

class FieldCtx {
 public:
  // Default modulus: the lexicographically least monic irreducible polynomial of degree m,
  // compared on (c0, c1, ..., c_{m-1}).
  static std::shared_ptr<const FieldCtx> make(int p, int m);
  static std::shared_ptr<const FieldCtx> make(int p, int m, const std::vector<int>& modulus);
  // "p^m" or "p^m/c0,c1,...,cm" (constant term first).
  static std::shared_ptr<const FieldCtx> parse(std::string_view spec);

  int p() const { return p_; }
  int m() const { return m_; }
  std::uint32_t q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }
  std::string spec_string() const;
  bool same_field(const FieldCtx& o) const { return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_; }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem from_int(long long k) const;
  FieldElem from_code(std::uint64_t code) const;
  FieldElem from_coeffs(std::span<const int> c) const;
  std::vector<int> coeffs(FieldElem x) const;
  // Value of a prime-field element as an integer in [0, p); throws if x is not in F_p.
  int to_int(FieldElem x) const;
  std::string to_string(FieldElem x) const;  // "[c0,c1,...]"
  // generator of the multiplicative group used for the tables
  FieldElem primitive() const { return {exp_[1]}; }

  FieldElem add(FieldElem a, FieldElem b) const {
    if (p_ == 2) return {a.code ^ b.code};
    if (!add_.empty()) return {add_[std::size_t(a.code) * q_ + b.code]};
    return add_zech(a, b);
  }
  FieldElem neg(FieldElem a) const { return {neg_[a.code]}; }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a.code == 0 || b.code == 0) return {0};
    return {exp_[log_[a.code] + log_[b.code]]};
  }
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t n) const;
  FieldElem scale(FieldElem a, long long k) const { return mul(from_int(k), a); }

  FieldElem frob(FieldElem x, int e) const {
    e %= m_;
    if (e < 0) e += m_;
    return {frob_[std::size_t(e) * q_ + x.code]};
  }
  FieldElem frob(FieldElem x, Frob f) const { return frob(x, f.exp); }
  Frob compose(Frob a, Frob b) const { return {(a.exp + b.exp) % m_}; }
  Frob inverse(Frob a) const { return {(m_ - a.exp) % m_}; }
  Frob frob_power(Frob a, long long k) const;

  // 1, x, ..., x^{m-1}
  std::vector<FieldElem> fp_basis() const;
  bool in_subfield(FieldElem x, int d) const { return frob(x, d) == x; }

 private:
  FieldCtx(int p, int m, std::vector<int> modulus);
  FieldElem add_zech(FieldElem a, FieldElem b) const;

  int p_, m_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> exp_, log_, zech_, neg_, frob_;
  std::vector<std::uint16_t> add_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

bool is_prime(long long n);

// Polynomial helpers over F_p on coefficient vectors, constant term first.
bool poly_is_irreducible(const std::vector<int>& f, int p);
std::vector<int> least_irreducible(int p, int m);

// Relative trace tr_{p^m / p^d}(x) = x + x^{p^d} + ... + x^{p^{m-d}}.
FieldElem trace_rel(const FieldCtx& F, FieldElem x, int d);
FieldElem trace(const FieldCtx& F, FieldElem x);
int trace_int(const FieldCtx& F, FieldElem x);  // absolute trace as an integer in [0, p)
FieldElem frob_apply(const FieldCtx& F, Frob f, FieldElem x);

class NoSolution : public Error {
 public:
  NoSolution(FieldElem tr, const std::string& what) : Error(ErrorKind::NoSolution, what), trace_value(tr) {}
  FieldElem trace_value;
};

// Least-key beta with beta^{p^d} - beta = alpha. Throws NoSolution (carrying
// tr_{p^m/p^d}(alpha)) if none exists.
FieldElem artin_schreier_solve(const FieldCtx& F, FieldElem alpha, int d);
std::optional<FieldElem> try_artin_schreier(const FieldCtx& F, FieldElem alpha, int d);

// Coordinate vectors over F_p (coefficients c_0..c_{m-1}).
std::vector<int> to_fp_vector(const FieldCtx& F, FieldElem x);
FieldElem from_fp_vector(const FieldCtx& F, std::span<const int> v);

}  // namespace pgq
