#pragma once

// Elements of Z_p known modulo p^M.

#include <cstdint>
#include <string>
#include <vector>

#include "koszulkit/ncpoly.hpp"

namespace koszulkit {

struct PadicApprox {
  std::uint32_t p = 2;
  unsigned precision = 1;  // M
  std::uint64_t value = 0;  // 0 <= value < p^M

  /// p^M; throws InvalidArgument unless it fits below 2^62.
  static std::uint64_t modulus(std::uint32_t p, unsigned precision);
  std::uint64_t modulus() const { return modulus(p, precision); }

  static PadicApprox from_integer(std::uint32_t p, unsigned precision, const BigInt& n);
  static PadicApprox from_integer(std::uint32_t p, unsigned precision, std::int64_t n) {
    return from_integer(p, precision, BigInt(n));
  }

  bool is_zero() const noexcept { return value == 0; }
  bool is_unit() const noexcept { return value % p != 0; }
  /// p-adic valuation of the residue, capped at M.
  unsigned valuation() const noexcept;
  /// Representative in (-p^M/2, p^M/2].
  std::int64_t balanced() const;
  /// Same residue class at a lower precision.
  PadicApprox reduced_to(unsigned m) const;

  std::string to_string() const;

  friend bool operator==(const PadicApprox&, const PadicApprox&) = default;
};

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b);
PadicApprox operator-(const PadicApprox& a, const PadicApprox& b);
PadicApprox operator-(const PadicApprox& a);
PadicApprox operator*(const PadicApprox& a, const PadicApprox& b);
/// Throws InvalidArgument for non-units.
PadicApprox inverse(const PadicApprox& a);
PadicApprox pow(const PadicApprox& a, std::uint64_t e);

/// theta: G -> Z_p^x, one unit per generator.
struct Orientation {
  std::vector<PadicApprox> values;
};

/// Continuous crossed homomorphism G -> Z_p(1), one value per generator.
struct CrossedHom {
  std::vector<PadicApprox> values;
};

}  // namespace koszulkit
