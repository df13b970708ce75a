#include <doctest.h>

#include <random>

#include "koszulkit/cocycle.hpp"
#include "koszulkit/errors.hpp"
#include "oracle.hpp"

using namespace koszulkit;

namespace {

constexpr unsigned kM = 6;

PadicApprox z(std::uint32_t p, std::int64_t v, unsigned m = kM) { return PadicApprox::from_integer(p, m, v); }

Word small_word(std::mt19937& rng, std::size_t d, int depth) {
  const int choice = depth <= 0 ? 0 : static_cast<int>(rng() % 5);
  switch (choice) {
    case 0:
      return Word::gen(rng() % d);
    case 1:
      return Word::inverse(small_word(rng, d, depth - 1));
    case 2:
      return Word::power(small_word(rng, d, depth - 1), static_cast<int>(rng() % 9) - 4);
    case 3:
      return Word::product({small_word(rng, d, depth - 1), small_word(rng, d, depth - 1)});
    default:
      return Word::commutator(small_word(rng, d, depth - 1), small_word(rng, d, depth - 1));
  }
}

// f and theta along the flattened letters, in plain modular integers.
std::pair<std::int64_t, std::int64_t> letter_eval(const Word& w, const std::vector<std::int64_t>& f,
                                                  const std::vector<std::int64_t>& theta, std::int64_t mod) {
  std::vector<std::pair<std::size_t, int>> letters;
  oracle::flatten(w, letters);
  std::int64_t fv = 0, tv = 1;
  for (auto [g, e] : letters) {
    std::int64_t lf = f[g], lt = theta[g];
    if (e < 0) {
      // theta^-1 by brute force search (mod is small).
      std::int64_t inv = 1;
      while (inv * lt % mod != 1) ++inv;
      lt = inv;
      lf = oracle::mod(-inv * lf, mod);
    }
    fv = (fv + tv * lf) % mod;
    tv = tv * lt % mod;
  }
  return {fv, tv};
}

}  // namespace

TEST_CASE("p-adic approximations") {
  const auto a = z(3, 10, 3);  // mod 27
  CHECK(a.value == 10);
  CHECK((a * inverse(a)).value == 1);
  CHECK(z(3, -1, 3).value == 26);
  CHECK(z(3, -1, 3).balanced() == -1);
  CHECK(z(3, 18, 3).valuation() == 2);
  CHECK(z(3, 0, 3).valuation() == 3);
  CHECK(z(3, 25, 3).reduced_to(2) == z(3, 7, 2));
  CHECK(pow(z(2, 3, 5), 8).value == 1);  // 3 has order 8 mod 32
  CHECK_THROWS_AS(inverse(z(3, 6, 3)), InvalidArgument);
  CHECK_THROWS_AS(z(3, 1, 3) + z(3, 1, 4), PrecisionMismatch);
  CHECK_THROWS_AS(PadicApprox::modulus(2, 70), InvalidArgument);
}

TEST_CASE("commutator value (theta(x)-1) f(y)") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const std::int64_t q = p == 2 ? 4 : p;
    const Orientation theta{{z(p, 1 + q), z(p, 1)}};
    const CrossedHom f{{z(p, 0), z(p, 1)}};
    CHECK(eval(f, theta, parse_word("comm(x1,x2)")) == z(p, q));
  }
}

TEST_CASE("trivial orientation gives exponent sums") {
  const std::uint32_t p = 5;
  const Orientation theta{{z(p, 1), z(p, 1)}};
  const CrossedHom f{{z(p, 2), z(p, 3)}};
  CHECK(eval(f, theta, parse_word("pow(x1, 7)")) == z(p, 14));
  CHECK(eval(f, theta, parse_word("pow(x1, -7) * x2 * comm(x1, x2)")) == z(p, -11));
  BigInt huge = BigInt(1) << 100;
  CHECK(eval(f, theta, Word::power(Word::gen(1), huge + 1)) == PadicApprox::from_integer(p, kM, 3 * (huge + 1)));
}

TEST_CASE("Kochloukova-Zalesskii relation evaluates to p") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    // Generators x, y, z; relation z^p [x, y]; theta trivial on z.
    const Orientation theta{{z(p, 1 + p), z(p, 1), z(p, 1)}};
    const CrossedHom f{{z(p, 0), z(p, 0), z(p, 1)}};
    const auto v = eval(f, theta, parse_word("pow(x3, " + std::to_string(p) + ") * comm(x1, x2)"));
    CHECK(v == z(p, p));
    CHECK(!v.reduced_to(2).is_zero());
  }
}

TEST_CASE("eval agrees with a letter-by-letter evaluation") {
  std::mt19937 rng(51);
  for (std::uint32_t p : {2u, 3u}) {
    const std::int64_t mod = static_cast<std::int64_t>(oracle::ipow(p, kM));
    for (int t = 0; t < 60; ++t) {
      std::vector<std::int64_t> fv(3), tv(3);
      Orientation theta;
      CrossedHom f;
      for (std::size_t i = 0; i < 3; ++i) {
        fv[i] = static_cast<std::int64_t>(rng() % mod);
        tv[i] = (1 + static_cast<std::int64_t>(p) * (rng() % 50)) % mod;
        if (p == 2 && rng() % 2) tv[i] = mod - tv[i];
        theta.values.push_back(z(p, tv[i]));
        f.values.push_back(z(p, fv[i]));
      }
      const Word w = small_word(rng, 3, 3);
      const auto [ef, et] = letter_eval(w, fv, tv, mod);
      CHECK_MESSAGE(eval(f, theta, w) == z(p, ef), w.to_string());
      CHECK(theta_eval(theta, w) == z(p, et));
    }
  }
}

TEST_CASE("cocycle law and coboundaries on random words") {
  std::mt19937 rng(52);
  const std::uint32_t p = 3;
  for (int t = 0; t < 50; ++t) {
    const Orientation theta{{z(p, 1 + 3 * (rng() % 20)), z(p, 1 + 3 * (rng() % 20)), z(p, 1)}};
    const CrossedHom f{{z(p, rng() % 100), z(p, rng() % 100), z(p, rng() % 100)}};
    const Word u = small_word(rng, 3, 2), v = small_word(rng, 3, 2);
    CHECK(eval(f, theta, Word::product({u, v})) == eval(f, theta, u) + theta_eval(theta, u) * eval(f, theta, v));
    const auto one = z(p, 1);
    const PadicApprox commutator_closed = (theta_eval(theta, u) - one) * eval(f, theta, v) -
                                          (theta_eval(theta, v) - one) * eval(f, theta, u);
    CHECK(eval(f, theta, Word::commutator(u, v)) == commutator_closed);
    // f_lambda(g) = (theta(g) - 1) lambda on every word.
    const PadicApprox lambda = z(p, static_cast<std::int64_t>(rng() % 500));
    CrossedHom cob;
    for (const auto& th : theta.values) cob.values.push_back((th - one) * lambda);
    CHECK(eval(cob, theta, u) == (theta_eval(theta, u) - one) * lambda);
    CHECK(eval(cob, theta, Word::commutator(u, v)).is_zero());
  }
}

TEST_CASE("precision checks") {
  const Orientation theta{{z(3, 1), z(3, 1)}};
  const CrossedHom f{{z(3, 1, 4), z(3, 0, 4)}};
  CHECK_THROWS_AS(eval(f, theta, parse_word("x1")), PrecisionMismatch);
  const CrossedHom g{{z(3, 1)}};
  CHECK_THROWS_AS(eval(g, theta, parse_word("x1")), DimensionMismatch);
  const CrossedHom h{{z(3, 1), z(3, 0)}};
  CHECK_THROWS_AS(eval(h, theta, parse_word("pow(x1, 5, 2)")), InsufficientPrecision);
  CHECK_THROWS_AS(eval(h, theta, parse_word("x3")), IndexOutOfRange);
  const Orientation bad{{z(3, 3), z(3, 1)}};
  CHECK_THROWS_AS(eval(h, bad, parse_word("x1")), InvalidArgument);
}

TEST_CASE("obstruction table for the Kochloukova-Zalesskii presentation") {
  GroupPresentation g;
  g.p = 3;
  g.generators = {"x", "y", "z"};
  g.relations = {parse_word("pow(x3, 3) * comm(x1, x2)")};
  g.orientation.values = {z(3, 1, 8), z(3, 1, 8), z(3, 1, 8)};
  const auto t = cyclotomic_obstruction(g, 8);
  CHECK(t.obstructed());
  CHECK(t.entries[0][0].is_zero());
  CHECK(t.entries[1][0].is_zero());
  CHECK(t.entries[2][0] == z(3, 3, 8));
  g.relations = {parse_word("x1 * comm(x1, x2)")};
  CHECK_THROWS_AS(cyclotomic_obstruction(g, 8), NotInD2);
}

TEST_CASE("Weierstrass evaluation") {
  const std::uint32_t p = 3;
  const auto q = z(p, 3, 3);
  // X - q
  auto r = weierstrass_eval({-3, 1}, q);
  CHECK(r.value.is_zero());
  CHECK(r.status == WeierstrassStatus::NoObstruction);
  // X^2 at q = p, precision 3: p^2, nonzero mod p^3.
  r = weierstrass_eval({0, 0, 1}, q);
  CHECK(r.value == z(p, 9, 3));
  CHECK(r.status == WeierstrassStatus::Obstructed);
  // (X - q)^2 vanishes but is excluded by the torsion argument.
  r = weierstrass_eval({9, -6, 1}, q);
  CHECK(r.value.is_zero());
  CHECK(r.status == WeierstrassStatus::ExcludedByTorsion);
  CHECK(r.note.find("passes crossed-hom test") != std::string::npos);
  CHECK_THROWS_AS(weierstrass_eval({1, 2}, q), NonMonic);
  CHECK_THROWS_AS(weierstrass_eval({}, q), NonMonic);
}

TEST_CASE("Weierstrass value equals direct polynomial evaluation") {
  std::mt19937 rng(53);
  for (std::uint32_t p : {2u, 3u}) {
    for (std::int64_t qv : {static_cast<std::int64_t>(p), static_cast<std::int64_t>(p * p)}) {
      const std::int64_t mod = static_cast<std::int64_t>(oracle::ipow(p, 5));
      for (int t = 0; t < 10; ++t) {
        const std::size_t h = 1 + rng() % 3;
        std::vector<BigInt> coeffs;
        std::int64_t value = 0, qpow = 1;
        for (std::size_t k = 0; k <= h; ++k) {
          const std::int64_t c = k == h ? 1 : static_cast<std::int64_t>(rng() % 40) - 20;
          coeffs.push_back(c);
          value = oracle::mod(value + c * qpow, mod);
          qpow = qpow * qv % mod;
        }
        const auto r = weierstrass_eval(coeffs, PadicApprox::from_integer(p, 5, qv));
        CHECK(r.value == PadicApprox::from_integer(p, 5, value));
        // The same value from eval on the explicit word.
        const auto one = PadicApprox::from_integer(p, 5, 1);
        const Orientation theta{{PadicApprox::from_integer(p, 5, 1 + qv), one}};
        const CrossedHom f{{PadicApprox::from_integer(p, 5, 0), one}};
        CHECK(eval(f, theta, commutator_polynomial_word(coeffs, 5)) == r.value);
      }
    }
  }
}
