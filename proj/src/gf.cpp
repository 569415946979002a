#include "pgq/gf.hpp"

#include <charconv>
#include <sstream>

#include "pgq/fp_linalg.hpp"

namespace pgq {

std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::InconsistentParams: return "InconsistentParams";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::SelfCheckFailed: return "SelfCheckFailed";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotInModelForm: return "NotInModelForm";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<int>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of a modulo b (b nonzero, any leading coefficient)
Poly poly_rem(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  int lb = fp_inv(b.back(), p);
  while (a.size() >= b.size()) {
    int f = a.back() * lb % p;
    std::size_t sh = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = fp_mod(a[sh + i] - f * b[i], p);
    trim(a);
  }
  return a;
}

// digits of code in base p
void decode(std::uint32_t code, int p, int m, int* out) {
  for (int i = 0; i < m; ++i) {
    out[i] = int(code % std::uint32_t(p));
    code /= std::uint32_t(p);
  }
}

std::uint32_t encode(const int* d, int p, int m) {
  std::uint32_t c = 0;
  for (int i = m - 1; i >= 0; --i) c = c * std::uint32_t(p) + std::uint32_t(d[i]);
  return c;
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, int p, int m, const std::vector<int>& f) {
  std::vector<int> da(m), db(m), prod(2 * m, 0);
  decode(a, p, m, da.data());
  decode(b, p, m, db.data());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int k = 2 * m - 1; k >= m; --k) {
    int c = prod[k];
    if (c == 0) continue;
    // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
    for (int i = 0; i < m; ++i) prod[k - m + i] = fp_mod(prod[k - m + i] - c * f[i], p);
    prod[k] = 0;
  }
  return encode(prod.data(), p, m);
}

}  // namespace

bool poly_is_irreducible(const std::vector<int>& f0, int p) {
  Poly f = f0;
  for (auto& c : f) c = fp_mod(c, p);
  trim(f);
  int deg = int(f.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;
  // trial division by every monic polynomial of degree 1..deg/2
  for (int d = 1; 2 * d <= deg; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      Poly g(d + 1);
      long long t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = int(t % p);
        t /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> least_irreducible(int p, int m) {
  // enumerate (c0, c1, ..., c_{m-1}) lexicographically with c0 most significant
  long long count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  std::vector<int> f(m + 1, 0);
  f[m] = 1;
  for (long long idx = 0; idx < count; ++idx) {
    long long t = idx;
    for (int i = m - 1; i >= 0; --i) {
      f[i] = int(t % p);
      t /= p;
    }
    if (poly_is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::ReducibleModulus, "no irreducible polynomial found");
}

std::shared_ptr<const FieldCtx> FieldCtx::make(int p, int m) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be positive");
  return make(p, m, least_irreducible(p, m));
}

std::shared_ptr<const FieldCtx> FieldCtx::make(int p, int m, const std::vector<int>& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be positive");
  if (int(modulus.size()) != m + 1)
    throw Error(ErrorKind::DegreeMismatch, "modulus has " + std::to_string(modulus.size()) +
                                               " coefficients, expected " + std::to_string(m + 1));
  std::vector<int> f(modulus.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = fp_mod(modulus[i], p);
  if (f[m] != 1) throw Error(ErrorKind::InvalidParams, "modulus must be monic");
  if (!poly_is_irreducible(f, p)) throw Error(ErrorKind::ReducibleModulus, "modulus is reducible");
  return std::shared_ptr<const FieldCtx>(new FieldCtx(p, m, std::move(f)));
}

std::shared_ptr<const FieldCtx> FieldCtx::parse(std::string_view spec) {
  auto bad = [&] { return Error(ErrorKind::ParseError, "bad field spec '" + std::string(spec) + "'"); };
  auto read_int = [&](std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw bad();
    return v;
  };
  std::string_view head = spec, tail;
  bool has_mod = false;
  if (auto slash = spec.find('/'); slash != std::string_view::npos) {
    head = spec.substr(0, slash);
    tail = spec.substr(slash + 1);
    has_mod = true;
  }
  long long p, m = 1;
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    p = read_int(head.substr(0, caret));
    m = read_int(head.substr(caret + 1));
  } else {
    p = read_int(head);
  }
  if (p > 1'000'000 || m > 64) throw Error(ErrorKind::TooLarge, "field too large");
  if (!has_mod) return make(int(p), int(m));
  std::vector<int> mod;
  std::size_t pos = 0;
  while (pos <= tail.size()) {
    auto comma = tail.find(',', pos);
    if (comma == std::string_view::npos) comma = tail.size();
    mod.push_back(int(read_int(tail.substr(pos, comma - pos))));
    pos = comma + 1;
  }
  return make(int(p), int(m), mod);
}

FieldCtx::FieldCtx(int p, int m, std::vector<int> modulus) : p_(p), m_(m), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= std::uint64_t(p);
    if (q > (1u << 20)) throw Error(ErrorKind::TooLarge, "fields beyond 2^20 elements are not supported");
  }
  q_ = std::uint32_t(q);
  const std::uint32_t n = q_ - 1;

  // multiplicative generator
  std::uint32_t g = (q_ == 2) ? 1 : 2;
  for (;; ++g) {
    std::uint32_t x = g, ord = 1;
    while (x != 1) {
      x = slow_mul(x, g, p_, m_, modulus_);
      ++ord;
    }
    if (ord == n) break;
  }
  exp_.assign(2 * std::size_t(n) + 1, 0);
  log_.assign(q_, n);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k] = x;
    log_[x] = k;
    x = slow_mul(x, g, p_, m_, modulus_);
  }
  for (std::uint32_t k = n; k < exp_.size(); ++k) exp_[k] = exp_[k - n];

  std::vector<int> da(m_), db(m_), dc(m_);
  neg_.resize(q_);
  for (std::uint32_t c = 0; c < q_; ++c) {
    decode(c, p_, m_, da.data());
    for (int i = 0; i < m_; ++i) da[i] = (p_ - da[i]) % p_;
    neg_[c] = encode(da.data(), p_, m_);
  }
  auto digit_add = [&](std::uint32_t a, std::uint32_t b) {
    decode(a, p_, m_, da.data());
    decode(b, p_, m_, db.data());
    for (int i = 0; i < m_; ++i) dc[i] = (da[i] + db[i]) % p_;
    return encode(dc.data(), p_, m_);
  };
  if (p_ != 2) {
    if (std::uint64_t(q_) * q_ <= (1u << 23)) {
      add_.resize(std::size_t(q_) * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b) add_[std::size_t(a) * q_ + b] = std::uint16_t(digit_add(a, b));
    } else {
      zech_.resize(n);
      for (std::uint32_t k = 0; k < n; ++k) zech_[k] = log_[digit_add(1, exp_[k])];
    }
  }
  frob_.resize(std::size_t(m_) * q_);
  std::uint64_t pe = 1;
  for (int e = 0; e < m_; ++e) {
    frob_[std::size_t(e) * q_] = 0;
    for (std::uint32_t c = 1; c < q_; ++c)
      frob_[std::size_t(e) * q_ + c] = exp_[std::uint64_t(log_[c]) * pe % n];
    pe = pe * std::uint64_t(p_) % n;
    if (n == 1) pe = 0;
  }
}

FieldElem FieldCtx::add_zech(FieldElem a, FieldElem b) const {
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  const std::uint32_t n = q_ - 1;
  std::uint32_t la = log_[a.code], lb = log_[b.code];
  std::uint32_t d = lb >= la ? lb - la : lb + n - la;
  std::uint32_t z = zech_[d];
  if (z == n) return {0};
  return {exp_[la + z]};
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.code == 0) throw Error(ErrorKind::InvalidParams, "inverse of zero");
  const std::uint32_t n = q_ - 1;
  return {exp_[(n - log_[a.code]) % n]};
}

FieldElem FieldCtx::pow(FieldElem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.code == 0) return zero();
  const std::uint64_t n = q_ - 1;
  return {exp_[std::uint64_t(log_[a.code]) * (e % n) % n]};
}

Frob FieldCtx::frob_power(Frob a, long long k) const {
  long long e = (static_cast<long long>(a.exp) * k) % m_;
  if (e < 0) e += m_;
  return {int(e)};
}

FieldElem FieldCtx::from_int(long long k) const { return {std::uint32_t(fp_mod(k, p_))}; }

FieldElem FieldCtx::from_code(std::uint64_t code) const {
  if (code >= q_) throw Error(ErrorKind::InvalidParams, "element code out of range");
  return {std::uint32_t(code)};
}

FieldElem FieldCtx::from_coeffs(std::span<const int> c) const {
  if (int(c.size()) > m_)
    throw Error(ErrorKind::DegreeMismatch, "coefficient vector longer than extension degree");
  std::vector<int> d(m_, 0);
  for (std::size_t i = 0; i < c.size(); ++i) d[i] = fp_mod(c[i], p_);
  return {encode(d.data(), p_, m_)};
}

std::vector<int> FieldCtx::coeffs(FieldElem x) const {
  std::vector<int> d(m_);
  decode(x.code, p_, m_, d.data());
  return d;
}

int FieldCtx::to_int(FieldElem x) const {
  if (x.code >= std::uint32_t(p_)) throw Error(ErrorKind::InvalidParams, "element is not in the prime field");
  return int(x.code);
}

std::string FieldCtx::to_string(FieldElem x) const {
  std::ostringstream os;
  os << '[';
  auto d = coeffs(x);
  for (int i = 0; i < m_; ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

std::string FieldCtx::spec_string() const {
  std::ostringstream os;
  os << p_ << '^' << m_ << '/';
  for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

std::vector<FieldElem> FieldCtx::fp_basis() const {
  std::vector<FieldElem> b;
  std::uint32_t c = 1;
  for (int i = 0; i < m_; ++i, c *= std::uint32_t(p_)) b.push_back({c});
  return b;
}

FieldElem trace_rel(const FieldCtx& F, FieldElem x, int d) {
  if (d <= 0 || F.m() % d != 0)
    throw Error(ErrorKind::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(F.m()));
  FieldElem s = F.zero();
  for (int j = 0; j < F.m(); j += d) s = F.add(s, F.frob(x, j));
  return s;
}

FieldElem trace(const FieldCtx& F, FieldElem x) { return trace_rel(F, x, 1); }

int trace_int(const FieldCtx& F, FieldElem x) { return F.to_int(trace(F, x)); }

FieldElem frob_apply(const FieldCtx& F, Frob f, FieldElem x) { return F.frob(x, f); }

std::vector<int> to_fp_vector(const FieldCtx& F, FieldElem x) { return F.coeffs(x); }

FieldElem from_fp_vector(const FieldCtx& F, std::span<const int> v) { return F.from_coeffs(v); }

std::optional<FieldElem> try_artin_schreier(const FieldCtx& F, FieldElem alpha, int d) {
  if (d <= 0 || F.m() % d != 0)
    throw Error(ErrorKind::NotADivisor, std::to_string(d) + " does not divide " + std::to_string(F.m()));
  const int m = F.m(), p = F.p();
  // unknowns ordered most significant coordinate first so the least solution is the least key
  FpMatrix A(p, m, m);
  auto basis = F.fp_basis();
  for (int k = 0; k < m; ++k) {
    FieldElem e = basis[m - 1 - k];
    A.set_column(k, F.coeffs(F.sub(F.frob(e, d), e)));
  }
  auto sol = fp_solve(A, F.coeffs(alpha));
  if (!sol) return std::nullopt;
  std::vector<int> c(m);
  for (int k = 0; k < m; ++k) c[m - 1 - k] = sol->particular[k];
  return F.from_coeffs(c);
}

FieldElem artin_schreier_solve(const FieldCtx& F, FieldElem alpha, int d) {
  auto r = try_artin_schreier(F, alpha, d);
  if (!r) {
    FieldElem t = trace_rel(F, alpha, d);
    throw NoSolution(t, "x^(p^" + std::to_string(d) + ") - x = " + F.to_string(alpha) +
                            " has no solution; relative trace is " + F.to_string(t));
  }
  return *r;
}

}  // namespace pgq
