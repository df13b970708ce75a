#pragma once

// Crossed homomorphisms G -> Z_p(1) at finite precision, evaluated on words.

#include <vector>

#include "koszulkit/group_presentation.hpp"
#include "koszulkit/padic.hpp"

namespace koszulkit {

/// theta(w); theta is multiplicative and kills commutators.
PadicApprox theta_eval(const Orientation& theta, const Word& w);

/// f(w) from f(uv) = f(u) + theta(u) f(v). Commutators are expanded as
/// u v u^-1 v^-1 and checked against (theta(u)-1) f(v) - (theta(v)-1) f(u).
/// Throws PrecisionMismatch unless all values share p and M.
PadicApprox eval(const CrossedHom& f, const Orientation& theta, const Word& w);

/// The crossed homomorphism with value 1 on generator i and 0 elsewhere.
CrossedHom generator_dual(std::size_t num_generators, std::size_t i, std::uint32_t p, unsigned precision);

struct ObstructionTable {
  std::uint32_t p = 2;
  unsigned precision = 0;
  std::vector<std::string> generators;  // rows: duals of these generators
  std::vector<std::string> relations;   // columns
  std::vector<std::vector<PadicApprox>> entries;

  /// A nonzero entry certifies that the dual of that generator has no lift
  /// to a crossed homomorphism killing the relations. An all-zero table only
  /// means "no obstruction found".
  bool obstructed() const;
};

ObstructionTable cyclotomic_obstruction(const GroupPresentation& pres, unsigned precision);

/// [x1, y] iterated m times: [x1, [x1, ... [x1, y]]]; m = 0 gives y.
Word iterated_commutator(const Word& x, const Word& y, std::size_t m);

/// Over generators x1 (index 0) and y (index 1), the word
///   [x1,_h y] [x1,_{h-1} y]^{a_{h-1}} ... [x1, y]^{a_1} y^{a_0}
/// attached to the monic X^h + a_{h-1} X^{h-1} + ... + a_0 (coefficients
/// listed from a_0 up to the leading 1). Exponents carry `digits` p-adic digits.
Word commutator_polynomial_word(const std::vector<BigInt>& coefficients, unsigned digits);

enum class WeierstrassStatus {
  Obstructed,           // value nonzero mod p^M
  NoObstruction,        // value zero, nothing else known
  ExcludedByTorsion,    // value zero, but the polynomial is (X - q)^m with m >= 2
};

struct WeierstrassReport {
  PadicApprox value;
  WeierstrassStatus status = WeierstrassStatus::NoObstruction;
  std::string note;
};

/// wp(q) mod p^M for a monic wp, with M the precision of q; cross-checked
/// against eval on commutator_polynomial_word with theta(x1) = 1 + q,
/// theta(y) = 1, f(x1) = 0, f(y) = 1. Throws NonMonic.
WeierstrassReport weierstrass_eval(const std::vector<BigInt>& coefficients, const PadicApprox& q);

}  // namespace koszulkit
