#include "koszulkit/ncpoly.hpp"

#include <cctype>
#include <sstream>

#include "koszulkit/errors.hpp"

namespace koszulkit {

struct Word::Node {
  Kind kind;
  std::size_t index = 0;
  std::vector<Word> children;
  BigInt exponent = 0;
  std::optional<unsigned> digits;
};

Word Word::gen(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gen;
  n->index = index;
  return Word(std::move(n));
}

Word Word::inverse(Word w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inverse;
  n->children.push_back(std::move(w));
  return Word(std::move(n));
}

Word Word::power(Word w, BigInt exponent, std::optional<unsigned> padic_digits) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->children.push_back(std::move(w));
  n->exponent = std::move(exponent);
  n->digits = padic_digits;
  return Word(std::move(n));
}

Word Word::product(std::vector<Word> factors) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->children = std::move(factors);
  return Word(std::move(n));
}

Word Word::commutator(Word u, Word v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Commutator;
  n->children = {std::move(u), std::move(v)};
  return Word(std::move(n));
}

Word::Kind Word::kind() const noexcept { return node_->kind; }

std::size_t Word::index() const {
  if (node_->kind != Kind::Gen) throw InvalidArgument("index() on a non-generator word");
  return node_->index;
}

const Word& Word::child() const {
  if (node_->kind != Kind::Inverse && node_->kind != Kind::Power)
    throw InvalidArgument("child() on a word without a single child");
  return node_->children.front();
}

const BigInt& Word::exponent() const {
  if (node_->kind != Kind::Power) throw InvalidArgument("exponent() on a non-power word");
  return node_->exponent;
}

std::optional<unsigned> Word::padic_digits() const { return node_->digits; }

const std::vector<Word>& Word::factors() const { return node_->children; }

std::size_t Word::alphabet_bound() const {
  if (node_->kind == Kind::Gen) return node_->index + 1;
  std::size_t m = 0;
  for (const auto& c : node_->children) m = std::max(m, c.alphabet_bound());
  return m;
}

std::size_t Word::node_count() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.node_count();
  return n;
}

std::string Word::to_string() const {
  switch (node_->kind) {
    case Kind::Gen:
      return "x" + std::to_string(node_->index + 1);
    case Kind::Inverse:
      return "inv(" + child().to_string() + ")";
    case Kind::Power: {
      std::string s = "pow(" + child().to_string() + ", " + node_->exponent.str();
      if (node_->digits) s += ", " + std::to_string(*node_->digits);
      return s + ")";
    }
    case Kind::Commutator:
      return "comm(" + node_->children[0].to_string() + ", " + node_->children[1].to_string() + ")";
    case Kind::Product: {
      if (node_->children.empty()) return "1";
      std::string s;
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        const auto& c = node_->children[i];
        if (i) s += " * ";
        s += c.kind() == Kind::Product ? "(" + c.to_string() + ")" : c.to_string();
      }
      return s;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word parse() {
    Word w = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("word: " + msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }
  BigInt integer() {
    skip();
    bool negative = false;
    if (accept("-"))
      negative = true;
    else
      accept("+");
    BigInt v(digits());
    return negative ? BigInt(-v) : v;
  }

  Word word() {
    std::vector<Word> fs{factor()};
    while (accept("*")) fs.push_back(factor());
    return fs.size() == 1 ? fs.front() : Word::product(std::move(fs));
  }

  Word factor() {
    skip();
    if (accept("inv(")) {
      Word w = word();
      expect(")");
      return Word::inverse(std::move(w));
    }
    if (accept("pow(")) {
      Word w = word();
      expect(",");
      BigInt n = integer();
      std::optional<unsigned> prec;
      if (accept(",")) prec = static_cast<unsigned>(std::stoul(digits()));
      expect(")");
      return Word::power(std::move(w), std::move(n), prec);
    }
    if (accept("comm(")) {
      Word u = word();
      expect(",");
      Word v = word();
      expect(")");
      return Word::commutator(std::move(u), std::move(v));
    }
    if (accept("(")) {
      Word w = word();
      expect(")");
      return w;
    }
    if (accept("1")) return Word::product({});
    if (accept("x")) {
      auto ds = digits();
      unsigned long i = std::stoul(ds);
      if (i == 0) fail("generators are numbered from x1");
      return Word::gen(i - 1);
    }
    fail("expected a word");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

// ---------------------------------------------------------------------------

NcPoly::NcPoly(PrimeField field, std::size_t alphabet_size, std::size_t cap)
    : field_(field), d_(alphabet_size), cap_(cap) {
  if (alphabet_size > 255) throw InvalidArgument("alphabet size above 255");
}

NcPoly NcPoly::one(PrimeField field, std::size_t alphabet_size, std::size_t cap) {
  NcPoly r(field, alphabet_size, cap);
  r.add_term({}, 1);
  return r;
}

NcPoly NcPoly::letter(PrimeField field, std::size_t alphabet_size, std::size_t cap, std::size_t i) {
  if (i >= alphabet_size)
    throw IndexOutOfRange("letter X" + std::to_string(i + 1) + " outside alphabet of size " +
                          std::to_string(alphabet_size));
  NcPoly r(field, alphabet_size, cap);
  r.add_term({static_cast<std::uint8_t>(i)}, 1);
  return r;
}

Residue NcPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void NcPoly::add_term(const Monomial& m, Residue c) {
  if (m.size() > cap_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

HomogeneousPart NcPoly::homogeneous(std::size_t degree) const {
  std::size_t size = 1;
  for (std::size_t i = 0; i < degree; ++i) size *= d_;
  HomogeneousPart h{degree, d_, std::vector<Residue>(size, 0)};
  for (const auto& [m, c] : terms_) {
    if (m.size() != degree) continue;
    std::size_t idx = 0;
    for (auto letter : m) idx = idx * d_ + letter;
    h.coeffs[idx] = c;
  }
  return h;
}

void NcPoly::check_compatible(const NcPoly& o) const {
  if (!(field_ == o.field_)) throw FieldMismatch("polynomials over different fields");
  if (d_ != o.d_ || cap_ != o.cap_)
    throw DimensionMismatch("polynomials with different alphabet or cap (" + std::to_string(d_) + "," +
                            std::to_string(cap_) + ") vs (" + std::to_string(o.d_) + "," +
                            std::to_string(o.cap_) + ")");
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  check_compatible(o);
  NcPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
  check_compatible(o);
  NcPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, field_.neg(c));
  return r;
}

NcPoly NcPoly::scaled(Residue c) const {
  NcPoly r(field_, d_, cap_);
  for (const auto& [m, x] : terms_) r.add_term(m, field_.mul(x, c));
  return r;
}

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = field_.p() > 2 && c > field_.p() / 2;
    const Residue mag = negative ? field_.p() - c : c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    if (m.empty()) {
      out << mag;
      continue;
    }
    if (mag != 1) out << mag << "*";
    for (auto letter : m) out << "X" << (letter + 1);
  }
  return out.str();
}

NcPoly nc_mul(const NcPoly& a, const NcPoly& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("polynomials over different fields");
  if (a.alphabet_size() != b.alphabet_size() || a.cap() != b.cap())
    throw DimensionMismatch("nc_mul: alphabet or cap mismatch");
  const auto& F = a.field();
  NcPoly r(F, a.alphabet_size(), a.cap());
  Monomial m;
  for (const auto& [u, x] : a.terms()) {
    for (const auto& [v, y] : b.terms()) {
      if (u.size() + v.size() > a.cap()) break;  // b's terms are length-ordered
      m.assign(u.begin(), u.end());
      m.insert(m.end(), v.begin(), v.end());
      r.add_term(m, F.mul(x, y));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

Residue binomial_mod_p(const BigInt& n, std::size_t k, const PrimeField& field) {
  const std::uint32_t p = field.p();
  // C(n, k) mod p depends only on n mod p^e once p^e > k.
  BigInt pe = 1;
  while (pe <= k) pe *= p;
  BigInt m = n % pe;
  if (m < 0) m += pe;
  Residue result = 1;
  std::size_t kk = k;
  while (kk > 0) {
    const auto ni = static_cast<std::uint64_t>(m % p);
    const auto ki = static_cast<std::uint64_t>(kk % p);
    if (ki > ni) return 0;
    // C(ni, ki) with ni < p.
    Residue num = 1, den = 1;
    for (std::uint64_t i = 0; i < ki; ++i) {
      num = field.mul(num, static_cast<Residue>(ni - i));
      den = field.mul(den, static_cast<Residue>(i + 1));
    }
    result = field.mul(result, field.mul(num, field.inv(den)));
    m /= p;
    kk /= p;
  }
  return result;
}

namespace {

// sum_k coeff(k) Y^k where Y = x - 1 has no constant term.
template <typename Coeff>
NcPoly series_in(const NcPoly& x, Coeff coeff) {
  const auto& F = x.field();
  NcPoly y = x - NcPoly::one(F, x.alphabet_size(), x.cap());
  NcPoly result = NcPoly::one(F, x.alphabet_size(), x.cap());
  NcPoly yk = NcPoly::one(F, x.alphabet_size(), x.cap());
  for (std::size_t k = 1; k <= x.cap(); ++k) {
    yk = nc_mul(yk, y);
    if (yk.is_zero()) break;
    const Residue c = coeff(k);
    if (c) result = result + yk.scaled(c);
  }
  return result;
}

NcPoly magnus_rec(const Word& w, const PrimeField& F, std::size_t d, std::size_t cap) {
  switch (w.kind()) {
    case Word::Kind::Gen: {
      if (w.index() >= d)
        throw IndexOutOfRange("generator x" + std::to_string(w.index() + 1) + " outside alphabet of size " +
                              std::to_string(d));
      NcPoly r = NcPoly::one(F, d, cap);
      r.add_term({static_cast<std::uint8_t>(w.index())}, 1);
      return r;
    }
    case Word::Kind::Inverse: {
      NcPoly x = magnus_rec(w.child(), F, d, cap);
      return series_in(x, [&](std::size_t k) { return k % 2 ? F.neg(1) : Residue{1}; });
    }
    case Word::Kind::Power: {
      if (auto digits = w.padic_digits(); digits && *digits < cap)
        throw InsufficientPrecision("p-adic exponent known to " + std::to_string(*digits) +
                                    " digits; cap " + std::to_string(cap) + " needs at least as many");
      NcPoly x = magnus_rec(w.child(), F, d, cap);
      return series_in(x, [&](std::size_t k) { return binomial_mod_p(w.exponent(), k, F); });
    }
    case Word::Kind::Product: {
      NcPoly r = NcPoly::one(F, d, cap);
      for (const auto& f : w.factors()) r = nc_mul(r, magnus_rec(f, F, d, cap));
      return r;
    }
    case Word::Kind::Commutator: {
      const auto& u = w.factors()[0];
      const auto& v = w.factors()[1];
      NcPoly mu = magnus_rec(u, F, d, cap);
      NcPoly mv = magnus_rec(v, F, d, cap);
      auto inverse = [&](const NcPoly& x) {
        return series_in(x, [&](std::size_t k) { return k % 2 ? F.neg(1) : Residue{1}; });
      };
      return nc_mul(nc_mul(mu, mv), nc_mul(inverse(mu), inverse(mv)));
    }
  }
  return NcPoly(F, d, cap);
}

}  // namespace

NcPoly magnus_expand(const Word& w, const PrimeField& field, std::size_t alphabet_size, std::size_t cap) {
  return magnus_rec(w, field, alphabet_size, cap);
}

std::optional<InitialForm> initial_form(const Word& w, const PrimeField& field, std::size_t alphabet_size,
                                        std::size_t cap) {
  NcPoly m = magnus_expand(w, field, alphabet_size, cap);
  for (const auto& [mono, c] : m.terms()) {
    if (mono.empty()) continue;
    // terms() is length-ordered, so the first non-constant term fixes the degree.
    return InitialForm{mono.size(), m.homogeneous(mono.size())};
  }
  return std::nullopt;
}

std::vector<Residue> psi2(const Word& w, const PrimeField& field, std::size_t alphabet_size) {
  NcPoly m = magnus_expand(w, field, alphabet_size, 2);
  for (const auto& [mono, c] : m.terms())
    if (mono.size() == 1)
      throw NotInD2("word " + w.to_string() + " has nonzero linear Magnus term at X" +
                    std::to_string(mono[0] + 1));
  return m.homogeneous(2).coeffs;
}

}  // namespace koszulkit
