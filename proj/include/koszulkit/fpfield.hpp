#pragma once

// Exact arithmetic and linear algebra over a prime field F_p.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace koszulkit {

using Residue = std::uint32_t;

class PrimeField {
 public:
  /// Throws InvalidArgument unless `p` is a prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  /// Multiplicative inverse of a nonzero residue.
  Residue inv(Residue a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(PrimeField field, std::size_t rows, std::size_t cols);
  /// Entries are reduced mod p; every row must have the same length.
  static FpMatrix from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols);
  static FpMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Residue>& data() const noexcept { return data_; }

  bool is_zero() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

/// Row-vector times matrix convention: (a * b)(i, k) = sum_j a(i, j) b(j, k).
FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);

struct RrefResult {
  std::size_t rank = 0;
  FpMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination with first-nonzero pivoting.
RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);

struct SparseEntry {
  std::uint32_t col;
  Residue val;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};
/// Entries sorted by column, no zero values.
using SparseVector = std::vector<SparseEntry>;

SparseVector to_sparse(std::span<const Residue> dense);
std::vector<Residue> to_dense(const SparseVector& v, std::size_t n);

class EchelonBuilder;

/// A subspace of F_p^n held by its reduced row echelon basis. Rows are stored
/// sparsely, sorted by pivot, each with leading coefficient 1 and no entries in
/// other rows' pivot columns; two subspaces are equal iff their bases are.
class Subspace {
 public:
  /// The zero subspace of F_p^n.
  Subspace(PrimeField field, std::size_t ambient_dim);

  static Subspace full(PrimeField field, std::size_t ambient_dim);
  /// Row space of `m`; its column count is the ambient dimension.
  static Subspace span(const FpMatrix& m);
  static Subspace span(PrimeField field, std::size_t ambient_dim,
                       const std::vector<std::vector<std::int64_t>>& rows);
  static Subspace span(PrimeField field, std::size_t ambient_dim, const std::vector<SparseVector>& rows);
  /// Adopts rows already in reduced echelon form (any order). Throws
  /// InvalidArgument if they are not.
  static Subspace from_reduced_rows(PrimeField field, std::size_t ambient_dim, std::vector<SparseVector> rows);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  const std::vector<SparseVector>& rows() const noexcept { return rows_; }
  std::vector<std::size_t> pivots() const;
  /// Index of the basis row with pivot `col`, or -1.
  std::int64_t pivot_row(std::size_t col) const;

  /// Dense RREF basis (dim x ambient_dim).
  FpMatrix basis() const;

  /// Subtracts the component along the basis so that the result has no entries
  /// in pivot columns. The result is zero iff `v` lies in the subspace.
  SparseVector reduce(const SparseVector& v) const;
  std::vector<Residue> reduce(std::span<const Residue> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  friend class EchelonBuilder;
  void index_pivots();

  PrimeField field_;
  std::size_t ambient_;
  std::vector<SparseVector> rows_;
  std::vector<std::int32_t> pivot_index_;
};

/// Incremental construction of a subspace in fully reduced echelon form.
class EchelonBuilder {
 public:
  EchelonBuilder(PrimeField field, std::size_t ambient_dim);
  explicit EchelonBuilder(const Subspace& start);

  /// Adds `v` to the spanning set; returns true iff the dimension grew.
  bool add(const SparseVector& v);
  bool add(std::span<const Residue> dense) { return add(to_sparse(dense)); }

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_; }

  /// Consumes the builder.
  Subspace finish() &&;

 private:
  void axpy_into(SparseVector& row, Residue a, const SparseVector& w, std::size_t row_index);

  PrimeField field_;
  std::size_t ambient_;
  std::vector<SparseVector> rows_;
  std::vector<std::int32_t> pivot_of_col_;
  // Row indices that may hold a non-pivot entry in the column (stale entries allowed).
  std::vector<std::vector<std::uint32_t>> occurrences_;
  std::vector<Residue> scratch_;
  std::vector<std::uint32_t> touched_;
};

/// Annihilator under the coordinate pairing sum_k v_k w_k.
Subspace annihilator(const Subspace& s);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
/// Computed as ann(ann(a) + ann(b)).
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, std::span<const Residue> v);
bool subspace_equal(const Subspace& a, const Subspace& b);
/// Non-pivot coordinates of the basis of `s`, ascending.
std::vector<std::size_t> quotient_basis(std::size_t ambient_dim, const Subspace& s);

}  // namespace koszulkit
