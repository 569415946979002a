#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace pgq {

// Dense linear algebra over the prime field F_p. Entries are kept in [0, p).
using FpVec = std::vector<int>;

class FpMatrix {
 public:
  FpMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
  int at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
  void set_column(int c, const FpVec& v);

  // Row-reduce in place; returns pivot columns in order.
  std::vector<int> rref();
  int rank() const;

 private:
  int p_, rows_, cols_;
  std::vector<int> a_;
};

int fp_inv(int a, int p);
int fp_mod(long long a, int p);

// Affine solution set {particular + sum lambda_k basis[k]}. The basis is in reduced
// echelon form with leading positions `lead`, and `particular` vanishes on every leading
// position, so iterating lambda in lexicographic order walks the solutions in
// lexicographic order of the coordinate vectors.
struct AffineSolution {
  FpVec particular;
  std::vector<FpVec> basis;
  std::vector<int> lead;

  std::uint64_t count(int p) const;
  FpVec at(const FpVec& lambda, int p) const;
};

std::optional<AffineSolution> fp_solve(const FpMatrix& A, const FpVec& rhs);
AffineSolution fp_kernel(const FpMatrix& A);

// A subspace of F_p^n held as a reduced echelon basis.
class FpSubspace {
 public:
  FpSubspace(int p, int n) : p_(p), n_(n) {}
  static FpSubspace span(int p, int n, const std::vector<FpVec>& vecs);

  int p() const { return p_; }
  int ambient_dim() const { return n_; }
  int dim() const { return int(rows_.size()); }
  const std::vector<FpVec>& basis() const { return rows_; }
  // Returns true if v was independent (and is now included).
  bool insert(FpVec v);
  bool contains(FpVec v) const;
  bool operator==(const FpSubspace& o) const;

 private:
  FpVec reduce(FpVec v) const;
  int p_, n_;
  std::vector<FpVec> rows_;
  std::vector<int> piv_;
};

}  // namespace pgq
