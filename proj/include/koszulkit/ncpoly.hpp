#pragma once

// Group words, truncated noncommutative polynomials over F_p and the Magnus
// expansion x_i -> 1 + X_i.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszulkit/fpfield.hpp"

namespace koszulkit {

using BigInt = boost::multiprecision::cpp_int;

/// Immutable group-word AST. Commutators follow the left convention
/// [u, v] = u v u^-1 v^-1.
class Word {
 public:
  enum class Kind { Gen, Inverse, Power, Product, Commutator };

  static Word gen(std::size_t index);
  static Word inverse(Word w);
  /// `padic_digits`, when set, marks the exponent as a p-adic integer known
  /// modulo p^digits.
  static Word power(Word w, BigInt exponent, std::optional<unsigned> padic_digits = std::nullopt);
  static Word product(std::vector<Word> factors);
  static Word commutator(Word u, Word v);

  Kind kind() const noexcept;
  std::size_t index() const;                    // Gen
  const Word& child() const;                    // Inverse, Power
  const BigInt& exponent() const;               // Power
  std::optional<unsigned> padic_digits() const;  // Power
  const std::vector<Word>& factors() const;     // Product; (u, v) for Commutator

  /// One more than the largest generator index used (0 for the empty product).
  std::size_t alphabet_bound() const;
  std::size_t node_count() const;

  /// Text form accepted by parse_word: x1, inv(w), pow(w, n), comm(u, v), u * v.
  std::string to_string() const;

 private:
  struct Node;
  explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the word grammar
///   word   := factor ('*' factor)*
///   factor := 'x' N | 'inv(' word ')' | 'pow(' word ',' INT [',' N] ')'
///           | 'comm(' word ',' word ')' | '(' word ')' | '1'
/// Generators are 1-based in text (x1 is index 0). Throws ParseError.
Word parse_word(std::string_view text);

/// Letters 0..d-1; X_{i+1} in text.
using Monomial = std::vector<std::uint8_t>;

/// Length-lexicographic order with X1 < X2 < ...
struct LengthLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

/// Coefficients of one degree, indexed by the d^k monomials in lexicographic
/// order (the index of X_{i1}...X_{ik} is the base-d number i1...ik).
struct HomogeneousPart {
  std::size_t degree = 0;
  std::size_t alphabet_size = 0;
  std::vector<Residue> coeffs;
  friend bool operator==(const HomogeneousPart&, const HomogeneousPart&) = default;
};

/// Polynomial in noncommuting X_1..X_d truncated above total degree `cap`.
class NcPoly {
 public:
  NcPoly(PrimeField field, std::size_t alphabet_size, std::size_t cap);
  static NcPoly one(PrimeField field, std::size_t alphabet_size, std::size_t cap);
  static NcPoly letter(PrimeField field, std::size_t alphabet_size, std::size_t cap, std::size_t i);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t alphabet_size() const noexcept { return d_; }
  std::size_t cap() const noexcept { return cap_; }
  const std::map<Monomial, Residue, LengthLex>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Residue coefficient(const Monomial& m) const;
  /// Ignored when m is longer than the cap.
  void add_term(const Monomial& m, Residue c);

  HomogeneousPart homogeneous(std::size_t degree) const;

  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly scaled(Residue c) const;

  /// e.g. "1 + X1X2 - X2X1"; coefficients printed in balanced form.
  std::string to_string() const;

  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.field_ == b.field_ && a.d_ == b.d_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const NcPoly& o) const;

  PrimeField field_;
  std::size_t d_;
  std::size_t cap_;
  std::map<Monomial, Residue, LengthLex> terms_;
};

NcPoly nc_mul(const NcPoly& a, const NcPoly& b);

/// C(n, k) mod p for any integer n (negative n by the usual polynomial
/// extension), via Lucas' theorem.
Residue binomial_mod_p(const BigInt& n, std::size_t k, const PrimeField& field);

/// Image of `w` in F_p<<X_1..X_d>> truncated at `cap`.
NcPoly magnus_expand(const Word& w, const PrimeField& field, std::size_t alphabet_size, std::size_t cap);

struct InitialForm {
  std::size_t degree;
  HomogeneousPart part;
};

/// Lowest nonzero homogeneous part of magnus(w) - 1; nullopt when it vanishes
/// through the cap.
std::optional<InitialForm> initial_form(const Word& w, const PrimeField& field, std::size_t alphabet_size,
                                        std::size_t cap);

/// Degree-2 part of magnus(w) - 1 on the basis X_iX_j (row-major). Throws
/// NotInD2 if the degree-1 part is nonzero.
std::vector<Residue> psi2(const Word& w, const PrimeField& field, std::size_t alphabet_size);

}  // namespace koszulkit
