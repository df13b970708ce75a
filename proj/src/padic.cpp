#include "koszulkit/padic.hpp"

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {
using u128 = unsigned __int128;

void check_same(const PadicApprox& a, const PadicApprox& b) {
  if (a.p != b.p || a.precision != b.precision)
    throw PrecisionMismatch("p-adic operands mod " + std::to_string(a.p) + "^" + std::to_string(a.precision) +
                            " and " + std::to_string(b.p) + "^" + std::to_string(b.precision));
}
}  // namespace

std::uint64_t PadicApprox::modulus(std::uint32_t p, unsigned precision) {
  std::uint64_t m = 1;
  for (unsigned i = 0; i < precision; ++i) {
    if (m > (std::uint64_t{1} << 62) / p)
      throw InvalidArgument("p^M = " + std::to_string(p) + "^" + std::to_string(precision) + " is too large");
    m *= p;
  }
  return m;
}

PadicApprox PadicApprox::from_integer(std::uint32_t p, unsigned precision, const BigInt& n) {
  const BigInt mod = modulus(p, precision);
  BigInt r = n % mod;
  if (r < 0) r += mod;
  return {p, precision, static_cast<std::uint64_t>(r)};
}

unsigned PadicApprox::valuation() const noexcept {
  if (value == 0) return precision;
  unsigned v = 0;
  for (auto x = value; x % p == 0; x /= p) ++v;
  return v;
}

std::int64_t PadicApprox::balanced() const {
  const auto m = modulus();
  return value > m / 2 ? static_cast<std::int64_t>(value) - static_cast<std::int64_t>(m)
                       : static_cast<std::int64_t>(value);
}

PadicApprox PadicApprox::reduced_to(unsigned m) const {
  if (m > precision)
    throw InsufficientPrecision("cannot raise precision from " + std::to_string(precision) + " to " +
                                std::to_string(m));
  return {p, m, value % modulus(p, m)};
}

std::string PadicApprox::to_string() const {
  return std::to_string(value) + " mod " + std::to_string(p) + "^" + std::to_string(precision);
}

PadicApprox operator+(const PadicApprox& a, const PadicApprox& b) {
  check_same(a, b);
  const auto m = a.modulus();
  return {a.p, a.precision, static_cast<std::uint64_t>((u128{a.value} + b.value) % m)};
}

PadicApprox operator-(const PadicApprox& a) {
  const auto m = a.modulus();
  return {a.p, a.precision, a.value == 0 ? 0 : m - a.value};
}

PadicApprox operator-(const PadicApprox& a, const PadicApprox& b) { return a + (-b); }

PadicApprox operator*(const PadicApprox& a, const PadicApprox& b) {
  check_same(a, b);
  const auto m = a.modulus();
  return {a.p, a.precision, static_cast<std::uint64_t>(u128{a.value} * b.value % m)};
}

PadicApprox pow(const PadicApprox& a, std::uint64_t e) {
  PadicApprox r = PadicApprox::from_integer(a.p, a.precision, 1);
  PadicApprox base = a;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

PadicApprox inverse(const PadicApprox& a) {
  if (!a.is_unit()) throw InvalidArgument(a.to_string() + " is not a unit");
  // Newton iteration x <- x(2 - a x) doubles the number of correct digits.
  PadicApprox x = PadicApprox::from_integer(a.p, a.precision, 1);
  {
    // Start from the inverse mod p.
    const PrimeField F(a.p);
    x.value = F.inv(static_cast<Residue>(a.value % a.p));
  }
  const PadicApprox two = PadicApprox::from_integer(a.p, a.precision, 2);
  for (unsigned digits = 1; digits < a.precision; digits *= 2) x = x * (two - a * x);
  return x;
}

}  // namespace koszulkit
