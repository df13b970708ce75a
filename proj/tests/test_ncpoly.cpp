#include <doctest.h>

#include <random>

#include "koszulkit/errors.hpp"
#include "koszulkit/ncpoly.hpp"
#include "oracle.hpp"

using namespace koszulkit;

namespace {

Word random_word(std::mt19937& rng, std::size_t d, int depth) {
  const int choice = depth <= 0 ? 0 : static_cast<int>(rng() % 5);
  switch (choice) {
    case 0:
      return Word::gen(rng() % d);
    case 1:
      return Word::inverse(random_word(rng, d, depth - 1));
    case 2:
      return Word::power(random_word(rng, d, depth - 1), static_cast<int>(rng() % 7) - 3);
    case 3:
      return Word::product({random_word(rng, d, depth - 1), random_word(rng, d, depth - 1)});
    default:
      return Word::commutator(random_word(rng, d, depth - 1), random_word(rng, d, depth - 1));
  }
}

bool same_series(const NcPoly& a, const oracle::Series& b) {
  oracle::Series mine;
  for (const auto& [m, c] : a.terms()) mine[std::vector<int>(m.begin(), m.end())] = c;
  return mine == b;
}

}  // namespace

TEST_CASE("word grammar round trip") {
  for (const char* s : {"x1", "inv(x2)", "pow(x1, -3)", "pow(x1, 5, 4)", "comm(x1, x2)", "x1 * x2 * inv(x1)",
                        "comm(comm(x1, x2), x3)", "pow(x1 * x2, 2)", "1"}) {
    const Word w = parse_word(s);
    CHECK(parse_word(w.to_string()).to_string() == w.to_string());
  }
  CHECK(parse_word("comm(x1,x2)").to_string() == "comm(x1, x2)");
  CHECK(parse_word("x3").index() == 2);
  CHECK(parse_word("pow(x1, 5, 4)").padic_digits() == 4u);
  CHECK(parse_word("(x1*x2)*x3").alphabet_bound() == 3);
  for (const char* bad : {"", "x0", "x", "pow(x1)", "comm(x1)", "x1 *", "y1", "inv(x1", "x1 x2"})
    CHECK_THROWS_AS(parse_word(bad), ParseError);
}

TEST_CASE("commutator expansion") {
  const PrimeField F(3);
  const NcPoly m = magnus_expand(parse_word("comm(x1,x2)"), F, 2, 3);
  CHECK(m.to_string().rfind("1 + X1X2 - X2X1", 0) == 0);
  CHECK(m.coefficient({0, 1}) == 1);
  CHECK(m.coefficient({1, 0}) == 2);
  CHECK(m.coefficient({0}) == 0);
}

TEST_CASE("Magnus expansion matches letter-by-letter products") {
  std::mt19937 rng(21);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PrimeField F(p);
    for (int t = 0; t < 60; ++t) {
      const std::size_t d = 1 + rng() % 3;
      const std::size_t cap = 1 + rng() % 4;
      const Word w = random_word(rng, d, 3);
      CHECK_MESSAGE(same_series(magnus_expand(w, F, d, cap), oracle::magnus(w, cap, p)), w.to_string());
    }
  }
}

TEST_CASE("Magnus expansion is multiplicative") {
  std::mt19937 rng(22);
  const PrimeField F(3);
  for (int t = 0; t < 40; ++t) {
    const Word u = random_word(rng, 2, 3), v = random_word(rng, 2, 3);
    const auto mu = magnus_expand(u, F, 2, 4), mv = magnus_expand(v, F, 2, 4);
    CHECK(nc_mul(mu, mv) == magnus_expand(Word::product({u, v}), F, 2, 4));
    CHECK(nc_mul(mu, magnus_expand(Word::inverse(u), F, 2, 4)) == NcPoly::one(F, 2, 4));
  }
}

TEST_CASE("binomials mod p agree with Pascal's triangle") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    const PrimeField F(static_cast<std::uint32_t>(p));
    for (std::int64_t n = -30; n <= 60; ++n)
      for (std::size_t k = 0; k <= 12; ++k) CHECK(binomial_mod_p(BigInt(n), k, F) == oracle::binomial(n, k, p));
  }
  // Lucas digits of 3^40: C(3^40, 1) = 0 and C(3^40 + 1, 1) = 1 mod 3.
  const PrimeField F(3);
  BigInt big = 1;
  for (int i = 0; i < 40; ++i) big *= 3;
  CHECK(binomial_mod_p(big, 0, F) == 1);
  CHECK(binomial_mod_p(big, 1, F) == 0);
  CHECK(binomial_mod_p(big + 1, 1, F) == 1);
}

TEST_CASE("large p-adic exponents expand through Lucas") {
  const PrimeField F(2);
  BigInt e = BigInt(1) << 70;
  // x^(2^70) = 1 + X^(2^70) == 1 below any practical cap.
  CHECK(magnus_expand(Word::power(Word::gen(0), e), F, 1, 6) == NcPoly::one(F, 1, 6));
  CHECK_THROWS_AS(magnus_expand(Word::power(Word::gen(0), 5, 2), F, 1, 4), InsufficientPrecision);
}

TEST_CASE("initial forms and psi2") {
  const PrimeField F(3);
  auto form = initial_form(parse_word("comm(x1,x2)"), F, 2, 4);
  REQUIRE(form);
  CHECK(form->degree == 2);
  CHECK(form->part.coeffs == std::vector<Residue>{0, 1, 2, 0});
  CHECK(psi2(parse_word("comm(x1,x2)"), F, 2) == std::vector<Residue>{0, 1, 2, 0});
  // x1^3 = 1 + 3X + 3X^2 + X^3: degree-3 initial form over F_3.
  form = initial_form(parse_word("pow(x1,3)"), F, 1, 4);
  REQUIRE(form);
  CHECK(form->degree == 3);
  CHECK(!initial_form(parse_word("x1*inv(x1)"), F, 1, 4));
  CHECK_THROWS_AS(psi2(parse_word("x1"), F, 2), NotInD2);
  // theta-abelian relation x0 x1 x0^-1 x1^-(1+p): psi2 = X0X1 - X1X0 mod p.
  CHECK(psi2(parse_word("x1*x2*inv(x1)*pow(x2,-4)"), F, 2) == std::vector<Residue>{0, 1, 2, 0});
  // p-th powers contribute C(p, 2) X^2, zero for odd p and one for p = 2.
  CHECK(psi2(parse_word("pow(x1,2)"), PrimeField(2), 1) == std::vector<Residue>{1});
  CHECK(psi2(parse_word("pow(x1,-4)"), PrimeField(2), 1) == std::vector<Residue>{0});
}

TEST_CASE("polynomial arithmetic and printing") {
  const PrimeField F(5);
  const auto x = NcPoly::letter(F, 2, 3, 0), y = NcPoly::letter(F, 2, 3, 1);
  const auto one = NcPoly::one(F, 2, 3);
  CHECK((x + y - x) == y);
  CHECK(nc_mul(x, y).to_string() == "X1X2");
  CHECK((one - nc_mul(y, x).scaled(2)).to_string() == "1 - 2*X2X1");
  CHECK(nc_mul(nc_mul(x, x), nc_mul(x, x)).is_zero());  // beyond the cap
  CHECK(magnus_expand(parse_word("1"), F, 2, 3) == one);
  CHECK_THROWS_AS(magnus_expand(parse_word("x3"), F, 2, 3), IndexOutOfRange);
  CHECK_THROWS_AS(x + NcPoly::letter(F, 2, 4, 0), DimensionMismatch);
  const auto h = (x + nc_mul(x, y)).homogeneous(2);
  CHECK(h.coeffs == std::vector<Residue>{0, 1, 0, 0});
}
