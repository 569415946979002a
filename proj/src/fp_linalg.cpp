#include "pgq/fp_linalg.hpp"

#include <algorithm>

namespace pgq {

int fp_mod(long long a, int p) {
  long long r = a % p;
  return int(r < 0 ? r + p : r);
}

int fp_inv(int a, int p) {
  // p is small; extended Euclid
  int t = 0, nt = 1, r = p, nr = fp_mod(a, p);
  while (nr != 0) {
    int qq = r / nr;
    int tmp = t - qq * nt;
    t = nt;
    nt = tmp;
    tmp = r - qq * nr;
    r = nr;
    nr = tmp;
  }
  return fp_mod(t, p);
}

void FpMatrix::set_column(int c, const FpVec& v) {
  for (int r = 0; r < rows_; ++r) at(r, c) = fp_mod(v[r], p_);
}

std::vector<int> FpMatrix::rref() {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int sel = -1;
    for (int i = r; i < rows_; ++i)
      if (at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
    int inv = fp_inv(at(r, c), p_);
    for (int j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv % p_;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      int f = at(i, c);
      for (int j = c; j < cols_; ++j) at(i, j) = fp_mod(at(i, j) - f * at(r, j), p_);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int FpMatrix::rank() const {
  FpMatrix t = *this;
  return int(t.rref().size());
}

std::uint64_t AffineSolution::count(int p) const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) n *= std::uint64_t(p);
  return n;
}

FpVec AffineSolution::at(const FpVec& lambda, int p) const {
  FpVec x = particular;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (lambda[k] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] + lambda[k] * basis[k][j]) % p;
  }
  return x;
}

namespace {

// Put a spanning set of the solution directions into reduced echelon form and clear the
// particular solution on the leading positions.
void normalize(AffineSolution& s, int p, int n) {
  FpSubspace sp = FpSubspace::span(p, n, s.basis);
  s.basis = sp.basis();
  s.lead.clear();
  for (auto& b : s.basis) {
    int l = 0;
    while (b[l] == 0) ++l;
    s.lead.push_back(l);
  }
  for (std::size_t k = 0; k < s.basis.size(); ++k) {
    int f = s.particular[s.lead[k]];
    if (f == 0) continue;
    for (int j = 0; j < n; ++j) s.particular[j] = fp_mod(s.particular[j] - f * s.basis[k][j], p);
  }
}

}  // namespace

std::optional<AffineSolution> fp_solve(const FpMatrix& A, const FpVec& rhs) {
  const int p = A.p(), n = A.cols(), m = A.rows();
  FpMatrix aug(p, m, n + 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, n) = fp_mod(rhs[r], p);
  }
  auto piv = aug.rref();
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  AffineSolution s;
  s.particular.assign(n, 0);
  std::vector<char> is_piv(n, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    is_piv[piv[r]] = 1;
    s.particular[piv[r]] = aug.at(int(r), n);
  }
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    FpVec v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = fp_mod(-aug.at(int(r), f), p);
    s.basis.push_back(std::move(v));
  }
  normalize(s, p, n);
  return s;
}

AffineSolution fp_kernel(const FpMatrix& A) {
  FpVec zero(A.rows(), 0);
  return *fp_solve(A, zero);
}

FpSubspace FpSubspace::span(int p, int n, const std::vector<FpVec>& vecs) {
  FpSubspace s(p, n);
  for (const auto& v : vecs) s.insert(v);
  return s;
}

FpVec FpSubspace::reduce(FpVec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    int f = v[piv_[k]];
    if (f == 0) continue;
    for (int j = 0; j < n_; ++j) v[j] = fp_mod(v[j] - f * rows_[k][j], p_);
  }
  return v;
}

bool FpSubspace::insert(FpVec v) {
  for (auto& x : v) x = fp_mod(x, p_);
  v = reduce(std::move(v));
  int l = 0;
  while (l < n_ && v[l] == 0) ++l;
  if (l == n_) return false;
  int inv = fp_inv(v[l], p_);
  for (auto& x : v) x = x * inv % p_;
  for (auto& row : rows_) {
    int f = row[l];
    if (f == 0) continue;
    for (int j = 0; j < n_; ++j) row[j] = fp_mod(row[j] - f * v[j], p_);
  }
  // keep rows sorted by pivot position
  auto pos = std::lower_bound(piv_.begin(), piv_.end(), l) - piv_.begin();
  piv_.insert(piv_.begin() + pos, l);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

bool FpSubspace::contains(FpVec v) const {
  for (auto& x : v) x = fp_mod(x, p_);
  v = reduce(std::move(v));
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool FpSubspace::operator==(const FpSubspace& o) const { return p_ == o.p_ && n_ == o.n_ && rows_ == o.rows_; }

}  // namespace pgq
