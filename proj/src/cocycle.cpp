#include "koszulkit/cocycle.hpp"

#include <stdexcept>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

struct Value {
  PadicApprox f;
  PadicApprox theta;
};

PadicApprox one_like(const PadicApprox& a) { return PadicApprox::from_integer(a.p, a.precision, 1); }

// 1 + t + ... + t^{n-1} and t^n for n >= 0, by binary doubling.
std::pair<PadicApprox, PadicApprox> geometric(const PadicApprox& t, const BigInt& n) {
  PadicApprox sum = PadicApprox::from_integer(t.p, t.precision, 0);
  PadicApprox tm = one_like(t);
  const auto bits = n == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned b = bits; b-- > 0;) {
    sum = sum * (one_like(t) + tm);  // G(2m) = G(m) (1 + t^m)
    tm = tm * tm;
    if (boost::multiprecision::bit_test(n, b)) {
      sum = sum + tm;  // G(m+1) = G(m) + t^m
      tm = tm * t;
    }
  }
  return {sum, tm};
}

Value inverse_value(const Value& v) {
  const PadicApprox ti = inverse(v.theta);
  return {-(ti * v.f), ti};
}

Value compose(const Value& a, const Value& b) { return {a.f + a.theta * b.f, a.theta * b.theta}; }

class Evaluator {
 public:
  Evaluator(const CrossedHom* f, const Orientation& theta) : f_(f), theta_(theta) {
    if (theta.values.empty()) throw InvalidArgument("empty orientation");
    p_ = theta.values.front().p;
    m_ = theta.values.front().precision;
    for (const auto& t : theta.values) {
      if (t.p != p_ || t.precision != m_) throw PrecisionMismatch("orientation values of mixed precision");
      if (!t.is_unit()) throw InvalidArgument("orientation value " + t.to_string() + " is not a unit");
    }
    if (f) {
      if (f->values.size() != theta.values.size())
        throw DimensionMismatch("crossed homomorphism and orientation on different generator counts");
      for (const auto& x : f->values)
        if (x.p != p_ || x.precision != m_)
          throw PrecisionMismatch("crossed homomorphism precision " + std::to_string(x.precision) +
                                  " differs from orientation precision " + std::to_string(m_));
    }
  }

  Value eval(const Word& w) const {
    switch (w.kind()) {
      case Word::Kind::Gen: {
        const auto i = w.index();
        if (i >= theta_.values.size())
          throw IndexOutOfRange("generator x" + std::to_string(i + 1) + " outside " +
                                std::to_string(theta_.values.size()) + " generators");
        return {f_ ? f_->values[i] : zero(), theta_.values[i]};
      }
      case Word::Kind::Inverse:
        return inverse_value(eval(w.child()));
      case Word::Kind::Power: {
        if (auto digits = w.padic_digits(); digits && *digits < m_)
          throw InsufficientPrecision("p-adic exponent known to " + std::to_string(*digits) +
                                      " digits, evaluation needs " + std::to_string(m_));
        Value base = eval(w.child());
        BigInt n = w.exponent();
        if (n < 0) {
          base = inverse_value(base);
          n = -n;
        }
        auto [g, tn] = geometric(base.theta, n);
        return {g * base.f, tn};
      }
      case Word::Kind::Product: {
        Value acc{zero(), PadicApprox::from_integer(p_, m_, 1)};
        for (const auto& factor : w.factors()) acc = compose(acc, eval(factor));
        return acc;
      }
      case Word::Kind::Commutator: {
        const Value u = eval(w.factors()[0]);
        const Value v = eval(w.factors()[1]);
        const Value expanded = compose(compose(u, v), compose(inverse_value(u), inverse_value(v)));
        const PadicApprox one = PadicApprox::from_integer(p_, m_, 1);
        const PadicApprox closed = (u.theta - one) * v.f - (v.theta - one) * u.f;
        if (!(expanded.f == closed) || !(expanded.theta == one))
          throw std::logic_error("commutator cocycle identity failed on " + w.to_string());
        return expanded;
      }
    }
    throw std::logic_error("unknown word node");
  }

 private:
  PadicApprox zero() const { return PadicApprox::from_integer(p_, m_, 0); }

  const CrossedHom* f_;
  const Orientation& theta_;
  std::uint32_t p_ = 2;
  unsigned m_ = 1;
};

}  // namespace

PadicApprox theta_eval(const Orientation& theta, const Word& w) { return Evaluator(nullptr, theta).eval(w).theta; }

PadicApprox eval(const CrossedHom& f, const Orientation& theta, const Word& w) {
  return Evaluator(&f, theta).eval(w).f;
}

CrossedHom generator_dual(std::size_t num_generators, std::size_t i, std::uint32_t p, unsigned precision) {
  CrossedHom f;
  for (std::size_t k = 0; k < num_generators; ++k)
    f.values.push_back(PadicApprox::from_integer(p, precision, k == i ? 1 : 0));
  return f;
}

bool ObstructionTable::obstructed() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (!e.is_zero()) return true;
  return false;
}

ObstructionTable cyclotomic_obstruction(const GroupPresentation& pres, unsigned precision) {
  ObstructionTable t;
  t.p = pres.p;
  t.precision = precision;
  t.generators = pres.generators;
  Orientation theta;
  for (const auto& v : pres.orientation.values) theta.values.push_back(v.reduced_to(precision));
  for (const auto& r : pres.relations) {
    t.relations.push_back(r.to_string());
    if (auto form = initial_form(r, PrimeField(pres.p), pres.num_generators(), 1); form)
      throw NotInD2("relation " + r.to_string() + " is not in D_2");
  }
  for (std::size_t i = 0; i < pres.num_generators(); ++i) {
    const CrossedHom f = generator_dual(pres.num_generators(), i, pres.p, precision);
    std::vector<PadicApprox> row;
    for (const auto& r : pres.relations) row.push_back(eval(f, theta, r));
    t.entries.push_back(std::move(row));
  }
  return t;
}

Word iterated_commutator(const Word& x, const Word& y, std::size_t m) {
  Word w = y;
  for (std::size_t k = 0; k < m; ++k) w = Word::commutator(x, w);
  return w;
}

Word commutator_polynomial_word(const std::vector<BigInt>& coefficients, unsigned digits) {
  if (coefficients.empty() || coefficients.back() != 1)
    throw NonMonic("commutator polynomial must be monic");
  const std::size_t h = coefficients.size() - 1;
  const Word x = Word::gen(0), y = Word::gen(1);
  std::vector<Word> factors{iterated_commutator(x, y, h)};
  for (std::size_t k = h; k-- > 0;) factors.push_back(Word::power(iterated_commutator(x, y, k), coefficients[k], digits));
  return Word::product(std::move(factors));
}

WeierstrassReport weierstrass_eval(const std::vector<BigInt>& coefficients, const PadicApprox& q) {
  if (coefficients.empty() || coefficients.back() != 1)
    throw NonMonic("Weierstrass polynomial must have leading coefficient 1");
  const std::size_t h = coefficients.size() - 1;
  // Horner.
  PadicApprox value = PadicApprox::from_integer(q.p, q.precision, 0);
  for (std::size_t k = coefficients.size(); k-- > 0;)
    value = value * q + PadicApprox::from_integer(q.p, q.precision, coefficients[k]);

  const Word w = commutator_polynomial_word(coefficients, q.precision);
  const PadicApprox one = PadicApprox::from_integer(q.p, q.precision, 1);
  const Orientation theta{{one + q, one}};
  const CrossedHom f{{PadicApprox::from_integer(q.p, q.precision, 0), one}};
  if (!(eval(f, theta, w) == value))
    throw std::logic_error("Weierstrass value disagrees with the crossed homomorphism on its word");

  WeierstrassReport r{value, WeierstrassStatus::NoObstruction, "no obstruction found"};
  if (!value.is_zero()) {
    r.status = WeierstrassStatus::Obstructed;
    r.note = "obstructed: value nonzero mod " + std::to_string(q.p) + "^" + std::to_string(q.precision);
    return r;
  }
  if (h >= 2) {
    // Is the polynomial (X - q)^h?
    bool is_power = true;
    PadicApprox binom = one;  // C(h, k), built incrementally as an integer
    BigInt c = 1;
    for (std::size_t k = 0; k <= h && is_power; ++k) {
      if (k > 0) c = c * (h - k + 1) / k;
      binom = PadicApprox::from_integer(q.p, q.precision, c);
      const PadicApprox expected = binom * pow(-q, h - k);
      is_power = expected == PadicApprox::from_integer(q.p, q.precision, coefficients[k]);
    }
    if (is_power) {
      r.status = WeierstrassStatus::ExcludedByTorsion;
      r.note = "passes crossed-hom test; excluded as a defining relation since (X-q)^m with m >= 2 "
               "forces torsion in the kernel abelianization";
    }
  }
  return r;
}

}  // namespace koszulkit
