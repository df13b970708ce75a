#include "koszulkit/fpfield.hpp"

#include <algorithm>
#include <cassert>

#include "koszulkit/errors.hpp"

namespace koszulkit {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw InvalidArgument("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue r = 1 % p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw InvalidArgument("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix FpMatrix::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows,
                             std::size_t cols) {
  FpMatrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw DimensionMismatch("row " + std::to_string(i) + " has length " +
                              std::to_string(rows[i].size()) + ", expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.reduce(rows[i][j]);
  }
  return m;
}

FpMatrix FpMatrix::identity(PrimeField field, std::size_t n) {
  FpMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  if (!(a.field() == b.field())) throw FieldMismatch("matrix product over different fields");
  const auto& F = a.field();
  FpMatrix c(F, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Residue x = a(i, j);
      if (!x) continue;
      auto brow = b.row(j);
      for (std::size_t k = 0; k < b.cols(); ++k)
        if (brow[k]) out[k] = F.add(out[k], F.mul(x, brow[k]));
    }
  }
  return c;
}

RrefResult rref(const FpMatrix& m) {
  const auto& F = m.field();
  FpMatrix r = m;
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
    std::size_t sel = lead;
    while (sel < r.rows() && r(sel, col) == 0) ++sel;
    if (sel == r.rows()) continue;
    if (sel != lead)
      std::swap_ranges(r.row(sel).begin(), r.row(sel).end(), r.row(lead).begin());
    auto prow = r.row(lead);
    Residue s = F.inv(prow[col]);
    for (std::size_t k = col; k < r.cols(); ++k) prow[k] = F.mul(prow[k], s);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == lead) continue;
      Residue f = r(i, col);
      if (!f) continue;
      auto row = r.row(i);
      for (std::size_t k = col; k < r.cols(); ++k)
        if (prow[k]) row[k] = F.sub(row[k], F.mul(f, prow[k]));
    }
    pivots.push_back(col);
    ++lead;
  }
  return {pivots.size(), std::move(r), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

SparseVector to_sparse(std::span<const Residue> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) v.push_back({static_cast<std::uint32_t>(i), dense[i]});
  return v;
}

std::vector<Residue> to_dense(const SparseVector& v, std::size_t n) {
  std::vector<Residue> d(n, 0);
  for (auto [c, x] : v) d.at(c) = x;
  return d;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(PrimeField field, std::size_t ambient_dim)
    : field_(field), ambient_(ambient_dim), pivot_index_(ambient_dim, -1) {}

Subspace Subspace::full(PrimeField field, std::size_t ambient_dim) {
  Subspace s(field, ambient_dim);
  s.rows_.reserve(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) s.rows_.push_back({{static_cast<std::uint32_t>(i), 1}});
  s.index_pivots();
  return s;
}

Subspace Subspace::span(const FpMatrix& m) {
  EchelonBuilder b(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) b.add(m.row(i));
  return std::move(b).finish();
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim,
                        const std::vector<std::vector<std::int64_t>>& rows) {
  return span(FpMatrix::from_rows(field, rows, ambient_dim));
}

Subspace Subspace::span(PrimeField field, std::size_t ambient_dim, const std::vector<SparseVector>& rows) {
  EchelonBuilder b(field, ambient_dim);
  for (const auto& r : rows) b.add(r);
  return std::move(b).finish();
}

Subspace Subspace::from_reduced_rows(PrimeField field, std::size_t ambient_dim, std::vector<SparseVector> rows) {
  Subspace s(field, ambient_dim);
  std::sort(rows.begin(), rows.end(), [](const SparseVector& a, const SparseVector& b) {
    return !a.empty() && !b.empty() && a.front().col < b.front().col;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.empty() || r.front().val != 1 || r.back().col >= ambient_dim)
      throw InvalidArgument("row " + std::to_string(i) + " is not a normalized echelon row");
    if (i && rows[i - 1].front().col == r.front().col) throw InvalidArgument("repeated pivot column");
    s.pivot_index_[r.front().col] = static_cast<std::int32_t>(i);
  }
  for (const auto& r : rows)
    for (std::size_t k = 1; k < r.size(); ++k)
      if (r[k].col <= r[k - 1].col || r[k].val == 0 || s.pivot_index_[r[k].col] >= 0)
        throw InvalidArgument("rows are not in reduced echelon form");
  s.rows_ = std::move(rows);
  return s;
}

void Subspace::index_pivots() {
  std::fill(pivot_index_.begin(), pivot_index_.end(), -1);
  for (std::size_t i = 0; i < rows_.size(); ++i) pivot_index_[rows_[i].front().col] = static_cast<std::int32_t>(i);
}

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.front().col);
  return out;
}

std::int64_t Subspace::pivot_row(std::size_t col) const {
  return col < ambient_ ? pivot_index_[col] : -1;
}

FpMatrix Subspace::basis() const {
  FpMatrix m(field_, rows_.size(), ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (auto [c, x] : rows_[i]) m(i, c) = x;
  return m;
}

SparseVector Subspace::reduce(const SparseVector& v) const {
  // Rows carry no foreign pivot columns, so one pass over v's own pivot
  // entries clears every pivot column.
  std::vector<std::pair<std::uint32_t, Residue>> acc;
  for (auto [c, x] : v) {
    if (c >= ambient_) throw DimensionMismatch("vector entry beyond ambient dimension");
    std::int32_t r = pivot_index_[c];
    if (r < 0) {
      acc.emplace_back(c, x);
      continue;
    }
    for (auto [c2, y] : rows_[r])
      if (c2 != c) acc.emplace_back(c2, field_.neg(field_.mul(x, y)));
  }
  std::sort(acc.begin(), acc.end(), [](auto& a, auto& b) { return a.first < b.first; });
  SparseVector out;
  for (auto [c, x] : acc) {
    if (!out.empty() && out.back().col == c)
      out.back().val = field_.add(out.back().val, x);
    else
      out.push_back({c, x});
    if (out.back().val == 0) out.pop_back();
  }
  return out;
}

std::vector<Residue> Subspace::reduce(std::span<const Residue> v) const {
  if (v.size() != ambient_)
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " in ambient dimension " +
                            std::to_string(ambient_));
  return to_dense(reduce(to_sparse(v)), ambient_);
}

// ---------------------------------------------------------------------------

EchelonBuilder::EchelonBuilder(PrimeField field, std::size_t ambient_dim)
    : field_(field),
      ambient_(ambient_dim),
      pivot_of_col_(ambient_dim, -1),
      occurrences_(ambient_dim),
      scratch_(ambient_dim, 0) {}

EchelonBuilder::EchelonBuilder(const Subspace& start) : EchelonBuilder(start.field(), start.ambient_dim()) {
  rows_ = start.rows();
  for (std::uint32_t i = 0; i < rows_.size(); ++i) {
    pivot_of_col_[rows_[i].front().col] = static_cast<std::int32_t>(i);
    for (std::size_t k = 1; k < rows_[i].size(); ++k) occurrences_[rows_[i][k].col].push_back(i);
  }
}

void EchelonBuilder::axpy_into(SparseVector& row, Residue a, const SparseVector& w, std::size_t row_index) {
  // row -= a * w, registering new non-pivot columns of `row`.
  SparseVector out;
  out.reserve(row.size() + w.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < w.size()) {
    if (j == w.size() || (i < row.size() && row[i].col < w[j].col)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || w[j].col < row[i].col) {
      Residue x = field_.neg(field_.mul(a, w[j].val));
      if (x) {
        out.push_back({w[j].col, x});
        occurrences_[w[j].col].push_back(static_cast<std::uint32_t>(row_index));
      }
      ++j;
    } else {
      Residue x = field_.sub(row[i].val, field_.mul(a, w[j].val));
      if (x) out.push_back({row[i].col, x});
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

bool EchelonBuilder::add(const SparseVector& v) {
  touched_.clear();
  auto bump = [&](std::uint32_t c, Residue x) {
    if (scratch_[c] == 0) touched_.push_back(c);
    scratch_[c] = field_.add(scratch_[c], x);
  };
  for (auto [c, x] : v) {
    if (c >= ambient_) throw DimensionMismatch("vector entry beyond ambient dimension");
    if (x == 0) continue;
    std::int32_t r = pivot_of_col_[c];
    if (r < 0) {
      bump(c, x);
      continue;
    }
    for (auto [c2, y] : rows_[r])
      if (c2 != c) bump(c2, field_.neg(field_.mul(x, y)));
  }
  SparseVector w;
  for (auto c : touched_) {
    if (scratch_[c]) w.push_back({c, scratch_[c]});
    scratch_[c] = 0;
  }
  if (w.empty()) return false;
  std::sort(w.begin(), w.end(), [](auto& a, auto& b) { return a.col < b.col; });
  const std::uint32_t pivot = w.front().col;
  Residue s = field_.inv(w.front().val);
  for (auto& e : w) e.val = field_.mul(e.val, s);

  auto occ = std::move(occurrences_[pivot]);
  occurrences_[pivot].clear();
  std::sort(occ.begin(), occ.end());
  occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
  for (auto idx : occ) {
    auto& row = rows_[idx];
    auto it = std::lower_bound(row.begin(), row.end(), pivot, [](const SparseEntry& e, std::uint32_t c) {
      return e.col < c;
    });
    if (it == row.end() || it->col != pivot) continue;
    axpy_into(row, it->val, w, idx);
  }

  const auto index = static_cast<std::uint32_t>(rows_.size());
  pivot_of_col_[pivot] = static_cast<std::int32_t>(index);
  for (std::size_t k = 1; k < w.size(); ++k) occurrences_[w[k].col].push_back(index);
  rows_.push_back(std::move(w));
  return true;
}

Subspace EchelonBuilder::finish() && {
  Subspace s(field_, ambient_);
  std::sort(rows_.begin(), rows_.end(),
            [](const SparseVector& a, const SparseVector& b) { return a.front().col < b.front().col; });
  s.rows_ = std::move(rows_);
  s.index_pivots();
  return s;
}

// ---------------------------------------------------------------------------

Subspace annihilator(const Subspace& s) {
  const auto& F = s.field();
  const std::size_t n = s.ambient_dim();
  // For each non-pivot column j: e_j - sum_i row_i[j] e_{pivot_i}.
  std::vector<SparseVector> cols(n);
  for (const auto& row : s.rows()) {
    const auto pivot = row.front().col;
    for (std::size_t k = 1; k < row.size(); ++k) cols[row[k].col].push_back({pivot, F.neg(row[k].val)});
  }
  EchelonBuilder b(F, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (s.pivot_row(j) >= 0) continue;
    SparseVector v = std::move(cols[j]);
    v.push_back({static_cast<std::uint32_t>(j), 1});
    std::sort(v.begin(), v.end(), [](auto& a, auto& c) { return a.col < c.col; });
    b.add(v);
  }
  return std::move(b).finish();
}

namespace {
void check_compatible(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("subspaces of F_p^" + std::to_string(a.ambient_dim()) + " and F_p^" +
                            std::to_string(b.ambient_dim()));
  if (!(a.field() == b.field())) throw FieldMismatch("subspaces over different fields");
}
}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  EchelonBuilder builder(a);
  for (const auto& r : b.rows()) builder.add(r);
  return std::move(builder).finish();
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

bool contains(const Subspace& a, std::span<const Residue> v) {
  const auto r = a.reduce(v);
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

bool subspace_equal(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  return a == b;
}

std::vector<std::size_t> quotient_basis(std::size_t ambient_dim, const Subspace& s) {
  if (ambient_dim != s.ambient_dim())
    throw DimensionMismatch("quotient of F_p^" + std::to_string(ambient_dim) + " by a subspace of F_p^" +
                            std::to_string(s.ambient_dim()));
  std::vector<std::size_t> out;
  out.reserve(ambient_dim - s.dim());
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (s.pivot_row(j) < 0) out.push_back(j);
  return out;
}

}  // namespace koszulkit
