#pragma once

// Elementary-type oriented pro-p groups: presentations, cohomology rings,
// graded group algebras and invariants.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszulkit/group_presentation.hpp"
#include "koszulkit/quadalg.hpp"

namespace koszulkit {

enum class DemushkinVariant { I, II, III };

/// AST of elementary-type constructions. `q` encodes im(theta) = 1 + q Z_p,
/// with q = 0 for the trivial orientation.
class GroupSpec {
 public:
  enum class Kind { Free, Demushkin, ThetaAbelian, FibreProduct, FreeProduct, Custom };

  static GroupSpec free(std::uint32_t p, std::size_t d);
  /// Variants II and III (p = 2, q = 2) take the exponent f (nullopt for
  /// infinity) and, for III, alpha in 4 Z_2.
  static GroupSpec demushkin(std::uint32_t p, std::size_t d, std::uint64_t q,
                             DemushkinVariant variant = DemushkinVariant::I,
                             std::optional<unsigned> f = std::nullopt, std::int64_t alpha = 0);
  static GroupSpec theta_abelian(std::uint32_t p, std::size_t d, std::uint64_t q);
  /// Iterated cyclotomic fibre product with c copies of Z_p(1).
  static GroupSpec fibre_product(GroupSpec inner, std::size_t c);
  static GroupSpec free_product(GroupSpec a, GroupSpec b);
  /// Explicit presentation; words over x1..xd, theta given by integers.
  static GroupSpec custom(std::uint32_t p, std::vector<std::string> generators, std::vector<Word> relations,
                          std::vector<BigInt> theta);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t p() const noexcept { return p_; }
  std::size_t d() const noexcept { return d_; }
  std::uint64_t q() const noexcept { return q_; }
  DemushkinVariant variant() const noexcept { return variant_; }
  std::optional<unsigned> f() const noexcept { return f_; }
  std::int64_t alpha() const noexcept { return alpha_; }
  std::size_t c() const noexcept { return c_; }
  const GroupSpec& inner() const;
  const GroupSpec& left() const;
  const GroupSpec& right() const;
  const std::vector<std::string>& custom_generators() const noexcept { return custom_generators_; }
  const std::vector<Word>& custom_relations() const noexcept { return custom_relations_; }
  const std::vector<BigInt>& custom_theta() const noexcept { return custom_theta_; }

  /// Number of generators of the presented group.
  std::size_t rank() const;
  /// q of the orientation of the whole group (0 when trivial).
  std::uint64_t orientation_q() const;

 private:
  GroupSpec() = default;
  void validate() const;

  Kind kind_ = Kind::Free;
  std::uint32_t p_ = 2;
  std::size_t d_ = 0;
  std::uint64_t q_ = 0;
  DemushkinVariant variant_ = DemushkinVariant::I;
  std::optional<unsigned> f_;
  std::int64_t alpha_ = 0;
  std::size_t c_ = 0;
  std::shared_ptr<const GroupSpec> a_, b_;
  std::vector<std::string> custom_generators_;
  std::vector<Word> custom_relations_;
  std::vector<BigInt> custom_theta_;
};

inline constexpr unsigned kDefaultPrecision = 8;

/// Orientation values are held mod p^precision. Throws InvalidSpec when a
/// relation leaves D_2 or has theta-value other than 1.
GroupPresentation presentation_of(const GroupSpec& spec, unsigned precision = kDefaultPrecision);

/// Closed-form H^*(G, F_p). Throws ModelOutOfScope for the p = 2, q = 2
/// Demushkin variants, whose squares are nonzero Bocksteins.
QuadraticPresentation cohomology_ring(const GroupSpec& spec);

/// Closed-form graded group algebra gr(G) = U_p(L(G)) of the Zassenhaus
/// filtration. Throws ModelOutOfScope for Demushkin groups with q = 2.
QuadraticPresentation gr_algebra(const GroupSpec& spec);

struct DualityReport {
  bool relation_subspaces_equal = false;
  std::size_t checked_up_to = 0;
  /// Largest n <= checked_up_to with equal dims in all degrees <= n.
  std::size_t dims_equal_up_to = 0;
  GradedDims dual_dims;
  GradedDims gr_dims;

  bool holds() const noexcept { return relation_subspaces_equal && dims_equal_up_to == checked_up_to; }
};

/// Compares koszul_dual(cohomology_ring(spec)) with gr_algebra(spec).
DualityReport verify_koszul_duality(const GroupSpec& spec, std::size_t max_degree);

/// R1 = annihilator of the span of psi2(r) over the relations. Throws
/// DegenerateRelationSpan when those images are linearly dependent.
QuadraticPresentation cohomology_from_presentation(const GroupPresentation& pres);

struct Abelianization {
  std::size_t free_rank = 0;
  std::vector<std::uint64_t> torsion;  // orders of the cyclic Z/q factors, ascending
  friend bool operator==(const Abelianization&, const Abelianization&) = default;
};

struct GroupInvariants {
  std::size_t d = 0;
  std::size_t r = 0;
  Abelianization abelianization;
  std::size_t theta_centre_rank = 0;
  /// Defined only for nontrivial orientations of the form 1 + q Z_p.
  std::optional<std::size_t> t1;
  std::optional<std::size_t> f1;
  /// Set when t1/f1 went through the free-product rule, which is a modeling
  /// choice rather than a known formula.
  bool t1_f1_modeling_choice = false;
};

GroupInvariants invariants(const GroupSpec& spec);

/// G/[G,G] from the exponent-sum matrix of the relations, by Smith normal
/// form over Z/p^M (M = the presentation precision); diagonal entries
/// divisible by p^M count as free.
Abelianization abelianization_from_presentation(const GroupPresentation& pres);

/// dim L_i(G) for i = 1..N. Supported for Free, ThetaAbelian and fibre
/// products over those; throws Unsupported otherwise.
std::vector<std::size_t> zassenhaus_dims(const GroupSpec& spec, std::size_t max_degree);

/// Word with every generator index shifted by `offset`.
Word shift_generators(const Word& w, std::size_t offset);

}  // namespace koszulkit
