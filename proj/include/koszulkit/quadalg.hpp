#pragma once

// Quadratic graded algebras A = T(V)/(R1) over F_p, R1 <= V (x) V.

#include <memory>
#include <string>
#include <vector>

#include "koszulkit/fpfield.hpp"

namespace koszulkit {

/// dim A_0, dim A_1, ..., dim A_N.
using GradedDims = std::vector<std::size_t>;

/// A_n = V^{(x)n} / I_n with I_n held in reduced echelon form; the normal
/// monomials are the non-pivot coordinates (base-d index, first letter most
/// significant).
struct ComponentBasis {
  std::size_t degree = 0;
  Subspace ideal;
  std::vector<std::size_t> normal;
  /// normal_position[m] = index of monomial m among `normal`, or -1.
  std::vector<std::int32_t> normal_position;

  std::size_t dim() const noexcept { return normal.size(); }
};

class QuadraticPresentation {
 public:
  /// `relations` lives in F_p^{d^2}, coordinate i*d + j standing for e_i (x) e_j.
  QuadraticPresentation(PrimeField field, std::vector<std::string> generators, Subspace relations);

  const PrimeField& field() const noexcept { return field_; }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  const Subspace& relations() const noexcept { return relations_; }

  /// Memoized; safe for concurrent callers.
  std::shared_ptr<const ComponentBasis> component(std::size_t n) const;

 private:
  struct Cache;

  PrimeField field_;
  std::vector<std::string> generators_;
  Subspace relations_;
  std::shared_ptr<Cache> cache_;
};

/// Upper bound on d^n for a single component (columns of the ideal matrix).
inline constexpr std::size_t kMaxComponentAmbient = std::size_t{1} << 22;

ComponentBasis component(const QuadraticPresentation& a, std::size_t n);
GradedDims hilbert(const QuadraticPresentation& a, std::size_t max_degree);

/// Coordinates of the image of v in A_n on the normal monomials.
std::vector<Residue> normal_form(const QuadraticPresentation& a, std::size_t n, std::span<const Residue> v);

/// Matrix of A_i (x) A_j -> A_{i+j}; row index u * dim A_j + v for normal
/// monomials u, v (row-vector convention).
FpMatrix mult_map(const QuadraticPresentation& a, std::size_t i, std::size_t j);

// Constructions. Generators of A come first, then those of B; labels are
// prefixed with "A." and "B.".

/// C_n = A_n (+) B_n: products across the two blocks vanish.
QuadraticPresentation direct_product(const QuadraticPresentation& a, const QuadraticPresentation& b);
/// Only the relations of A and B.
QuadraticPresentation free_product(const QuadraticPresentation& a, const QuadraticPresentation& b);
/// Generators of A commute with those of B (ab - ba).
QuadraticPresentation sym_tensor(const QuadraticPresentation& a, const QuadraticPresentation& b);
/// Generators of A anticommute with those of B (ab + ba).
QuadraticPresentation skew_tensor(const QuadraticPresentation& a, const QuadraticPresentation& b);

/// Relations R1^perp under the pairing of coordinate (i,j) with (i,j). Labels
/// gain (or lose) a trailing '*'.
QuadraticPresentation koszul_dual(const QuadraticPresentation& a);

/// Default labels x1..xd.
std::vector<std::string> default_labels(std::size_t d, const std::string& stem = "x");

QuadraticPresentation tensor_algebra(PrimeField field, std::size_t d, std::vector<std::string> labels = {});
QuadraticPresentation symmetric(PrimeField field, std::size_t d, std::vector<std::string> labels = {});
QuadraticPresentation exterior(PrimeField field, std::size_t d, std::vector<std::string> labels = {});
QuadraticPresentation dual_numbers(PrimeField field, std::size_t d, std::vector<std::string> labels = {});
/// Single relation sum_i (X_{2i-1} X_{2i} - X_{2i} X_{2i-1}); d must be even.
QuadraticPresentation demushkin_dual(PrimeField field, std::size_t d, std::vector<std::string> labels = {});

}  // namespace koszulkit
