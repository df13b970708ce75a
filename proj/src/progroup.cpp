#include "koszulkit/progroup.hpp"

#include <algorithm>
#include <set>

#include "koszulkit/cocycle.hpp"
#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

bool is_power_of(std::uint64_t q, std::uint32_t p) {
  if (q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::free(std::uint32_t p, std::size_t d) {
  GroupSpec s;
  s.kind_ = Kind::Free;
  s.p_ = p;
  s.d_ = d;
  s.validate();
  return s;
}

GroupSpec GroupSpec::demushkin(std::uint32_t p, std::size_t d, std::uint64_t q, DemushkinVariant variant,
                               std::optional<unsigned> f, std::int64_t alpha) {
  GroupSpec s;
  s.kind_ = Kind::Demushkin;
  s.p_ = p;
  s.d_ = d;
  s.q_ = q;
  s.variant_ = variant;
  s.f_ = f;
  s.alpha_ = alpha;
  s.validate();
  return s;
}

GroupSpec GroupSpec::theta_abelian(std::uint32_t p, std::size_t d, std::uint64_t q) {
  GroupSpec s;
  s.kind_ = Kind::ThetaAbelian;
  s.p_ = p;
  s.d_ = d;
  s.q_ = q;
  s.validate();
  return s;
}

GroupSpec GroupSpec::fibre_product(GroupSpec inner, std::size_t c) {
  GroupSpec s;
  s.kind_ = Kind::FibreProduct;
  s.p_ = inner.p();
  s.c_ = c;
  s.a_ = std::make_shared<const GroupSpec>(std::move(inner));
  s.validate();
  return s;
}

GroupSpec GroupSpec::free_product(GroupSpec a, GroupSpec b) {
  GroupSpec s;
  s.kind_ = Kind::FreeProduct;
  s.p_ = a.p();
  s.a_ = std::make_shared<const GroupSpec>(std::move(a));
  s.b_ = std::make_shared<const GroupSpec>(std::move(b));
  s.validate();
  return s;
}

GroupSpec GroupSpec::custom(std::uint32_t p, std::vector<std::string> generators, std::vector<Word> relations,
                            std::vector<BigInt> theta) {
  GroupSpec s;
  s.kind_ = Kind::Custom;
  s.p_ = p;
  s.d_ = generators.size();
  s.custom_generators_ = std::move(generators);
  s.custom_relations_ = std::move(relations);
  s.custom_theta_ = std::move(theta);
  s.validate();
  return s;
}

const GroupSpec& GroupSpec::inner() const {
  if (kind_ != Kind::FibreProduct) throw InvalidArgument("inner() on a non-fibre-product spec");
  return *a_;
}
const GroupSpec& GroupSpec::left() const {
  if (kind_ != Kind::FreeProduct) throw InvalidArgument("left() on a non-free-product spec");
  return *a_;
}
const GroupSpec& GroupSpec::right() const {
  if (kind_ != Kind::FreeProduct) throw InvalidArgument("right() on a non-free-product spec");
  return *b_;
}

void GroupSpec::validate() const {
  if (!is_prime(p_) || p_ >= (1u << 31)) throw InvalidSpec("p = " + std::to_string(p_) + " is not a prime below 2^31");
  const auto check_q = [&] {
    if (q_ != 0 && !is_power_of(q_, p_))
      throw InvalidSpec("q = " + std::to_string(q_) + " is neither 0 nor a power of " + std::to_string(p_));
  };
  switch (kind_) {
    case Kind::Free:
      if (d_ == 0) throw InvalidSpec("free group needs d >= 1");
      break;
    case Kind::Demushkin:
      if (variant_ == DemushkinVariant::I) {
        check_q();
        if (d_ < 2 || d_ % 2) throw InvalidSpec("Demushkin case (i) needs an even d >= 2");
        if (f_ || alpha_ != 0) throw InvalidSpec("f and alpha belong to the p = 2 cases (ii) and (iii)");
      } else {
        if (p_ != 2 || q_ != 2) throw InvalidSpec("Demushkin cases (ii) and (iii) need p = 2 and q = 2");
        if (f_ && *f_ < 2) throw InvalidSpec("Demushkin exponent f must be at least 2");
        if (f_ && *f_ > 61) throw InvalidSpec("Demushkin exponent f above 61 is not representable");
        if (variant_ == DemushkinVariant::II) {
          if (d_ < 3 || d_ % 2 == 0) throw InvalidSpec("Demushkin case (ii) needs an odd d >= 3");
          if (alpha_ != 0) throw InvalidSpec("alpha belongs to case (iii)");
        } else {
          if (d_ < 2 || d_ % 2) throw InvalidSpec("Demushkin case (iii) needs an even d >= 2");
          if (alpha_ % 4 != 0) throw InvalidSpec("alpha must lie in 4 Z_2");
          if (d_ == 2 && f_) throw InvalidSpec("Demushkin case (iii) with d = 2 takes no f");
        }
      }
      break;
    case Kind::ThetaAbelian:
      check_q();
      if (d_ == 0) throw InvalidSpec("theta-abelian group needs d >= 1");
      break;
    case Kind::FibreProduct:
      if (c_ == 0) throw InvalidSpec("fibre product needs c >= 1");
      break;
    case Kind::FreeProduct:
      if (a_->p() != b_->p()) throw InvalidSpec("free product of groups over different primes");
      break;
    case Kind::Custom:
      if (custom_theta_.size() != d_)
        throw InvalidSpec("theta has " + std::to_string(custom_theta_.size()) + " values for " +
                          std::to_string(d_) + " generators");
      if (std::set<std::string>(custom_generators_.begin(), custom_generators_.end()).size() != d_)
        throw InvalidSpec("generator labels are not distinct");
      for (const auto& t : custom_theta_)
        if (t % p_ == 0) throw InvalidSpec("theta value " + t.str() + " is not a p-adic unit");
      for (const auto& r : custom_relations_)
        if (r.alphabet_bound() > d_) throw InvalidSpec("relation " + r.to_string() + " uses an undeclared generator");
      break;
  }
}

std::size_t GroupSpec::rank() const {
  switch (kind_) {
    case Kind::FibreProduct:
      return a_->rank() + c_;
    case Kind::FreeProduct:
      return a_->rank() + b_->rank();
    default:
      return d_;
  }
}

std::uint64_t GroupSpec::orientation_q() const {
  switch (kind_) {
    case Kind::Free:
      return 0;
    case Kind::Demushkin:
    case Kind::ThetaAbelian:
      return q_;
    case Kind::FibreProduct:
      return a_->orientation_q();
    case Kind::FreeProduct: {
      const auto qa = a_->orientation_q(), qb = b_->orientation_q();
      if (qa == 0 || qb == 0) return std::max(qa, qb);
      return std::min(qa, qb);
    }
    case Kind::Custom: {
      // Smallest p-power dividing every theta(x) - 1.
      if (d_ == 0) return 0;
      BigInt g = 0;
      for (const auto& t : custom_theta_) g = boost::multiprecision::gcd(g, BigInt(t - 1));
      if (g == 0) return 0;
      std::uint64_t q = 1;
      while (g % p_ == 0 && q <= (std::uint64_t{1} << 61) / p_) {
        g /= p_;
        q *= p_;
      }
      return q;
    }
  }
  return 0;
}

Word shift_generators(const Word& w, std::size_t offset) {
  switch (w.kind()) {
    case Word::Kind::Gen:
      return Word::gen(w.index() + offset);
    case Word::Kind::Inverse:
      return Word::inverse(shift_generators(w.child(), offset));
    case Word::Kind::Power:
      return Word::power(shift_generators(w.child(), offset), w.exponent(), w.padic_digits());
    case Word::Kind::Product: {
      std::vector<Word> out;
      for (const auto& f : w.factors()) out.push_back(shift_generators(f, offset));
      return Word::product(std::move(out));
    }
    case Word::Kind::Commutator:
      return Word::commutator(shift_generators(w.factors()[0], offset), shift_generators(w.factors()[1], offset));
  }
  throw std::logic_error("unknown word node");
}

// ---------------------------------------------------------------------------
// Presentations

namespace {

std::vector<std::string> labels(const std::string& stem, std::size_t first, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(first + i));
  return out;
}

Word two_power(std::size_t gen, std::optional<unsigned> f) {
  // x^{-2^f}; empty product for f = infinity.
  if (!f) return Word::product({});
  return Word::power(Word::gen(gen), -(BigInt(1) << *f));
}

GroupPresentation build(const GroupSpec& s, unsigned M) {
  const std::uint32_t p = s.p();
  const auto unit = [&](const BigInt& v) { return PadicApprox::from_integer(p, M, v); };
  GroupPresentation g;
  g.p = p;
  switch (s.kind()) {
    case GroupSpec::Kind::Free:
      g.generators = labels("x", 1, s.d());
      for (std::size_t i = 0; i < s.d(); ++i) g.orientation.values.push_back(unit(1));
      break;

    case GroupSpec::Kind::Demushkin: {
      const std::size_t d = s.d();
      g.generators = labels("x", 1, d);
      g.orientation.values.assign(d, unit(1));
      std::vector<Word> f;
      switch (s.variant()) {
        case DemushkinVariant::I:
          if (s.q() != 0) f.push_back(Word::power(Word::gen(0), -BigInt(s.q())));
          for (std::size_t i = 0; i + 1 < d; i += 2) f.push_back(Word::commutator(Word::gen(i), Word::gen(i + 1)));
          g.orientation.values[1] = unit(1 - BigInt(s.q()));
          break;
        case DemushkinVariant::II:
          f.push_back(Word::power(Word::gen(0), -2));
          f.push_back(two_power(1, s.f()));
          for (std::size_t i = 1; i + 1 < d; i += 2) f.push_back(Word::commutator(Word::gen(i), Word::gen(i + 1)));
          g.orientation.values[0] = unit(-1);
          if (s.f()) g.orientation.values[2] = unit(1 - (BigInt(1) << *s.f()));
          break;
        case DemushkinVariant::III:
          f.push_back(Word::power(Word::gen(0), -2 - BigInt(s.alpha())));
          f.push_back(Word::commutator(Word::gen(0), Word::gen(1)));
          if (d >= 4) {
            f.push_back(two_power(2, s.f()));
            for (std::size_t i = 2; i + 1 < d; i += 2) f.push_back(Word::commutator(Word::gen(i), Word::gen(i + 1)));
            if (s.f()) g.orientation.values[3] = unit(1 - (BigInt(1) << *s.f()));
          }
          // theta(x2) = 1 - (2 + alpha) makes the relation a cocycle zero.
          g.orientation.values[1] = unit(-1 - BigInt(s.alpha()));
          break;
      }
      g.relations.push_back(Word::product(std::move(f)));
      break;
    }

    case GroupSpec::Kind::ThetaAbelian: {
      const std::size_t d = s.d();
      g.generators = labels("x", 0, d);
      g.orientation.values.assign(d, unit(1));
      g.orientation.values[0] = unit(1 + BigInt(s.q()));
      const Word x0 = Word::gen(0);
      for (std::size_t i = 1; i < d; ++i)
        g.relations.push_back(Word::product(
            {x0, Word::gen(i), Word::inverse(x0), Word::power(Word::gen(i), -(1 + BigInt(s.q())))}));
      for (std::size_t i = 1; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) g.relations.push_back(Word::commutator(Word::gen(i), Word::gen(j)));
      break;
    }

    case GroupSpec::Kind::FibreProduct: {
      g = build(s.inner(), M);
      const std::size_t n = g.num_generators();
      std::set<std::string> taken(g.generators.begin(), g.generators.end());
      const std::string stem = taken.count("z1") ? "Z.z" : "z";
      const PadicApprox one = unit(1);
      for (std::size_t k = 0; k < s.c(); ++k) {
        const Word z = Word::gen(n + k);
        for (std::size_t j = 0; j < n; ++j) {
          const PadicApprox t = g.orientation.values[j] - one;
          if (t.is_zero())
            g.relations.push_back(Word::commutator(Word::gen(j), z));
          else
            g.relations.push_back(
                Word::product({Word::power(z, -BigInt(t.balanced()), M), Word::commutator(Word::gen(j), z)}));
        }
        for (std::size_t l = 0; l < k; ++l) g.relations.push_back(Word::commutator(Word::gen(n + l), z));
      }
      for (auto& l : labels(stem, 1, s.c())) g.generators.push_back(l);
      g.orientation.values.resize(n + s.c(), one);
      break;
    }

    case GroupSpec::Kind::FreeProduct: {
      GroupPresentation a = build(s.left(), M), b = build(s.right(), M);
      for (auto& l : a.generators) g.generators.push_back("A." + l);
      for (auto& l : b.generators) g.generators.push_back("B." + l);
      g.relations = a.relations;
      for (const auto& r : b.relations) g.relations.push_back(shift_generators(r, a.num_generators()));
      g.orientation.values = a.orientation.values;
      for (const auto& v : b.orientation.values) g.orientation.values.push_back(v);
      break;
    }

    case GroupSpec::Kind::Custom:
      g.generators = s.custom_generators();
      g.relations = s.custom_relations();
      for (const auto& t : s.custom_theta()) g.orientation.values.push_back(unit(t));
      break;
  }
  return g;
}

}  // namespace

GroupPresentation presentation_of(const GroupSpec& spec, unsigned precision) {
  if (precision < 2) throw InvalidArgument("precision must be at least 2");
  GroupPresentation g = build(spec, precision);
  const PrimeField F(g.p);
  const PadicApprox one = PadicApprox::from_integer(g.p, precision, 1);
  for (const auto& r : g.relations) {
    if (initial_form(r, F, g.num_generators(), 1))
      throw InvalidSpec("relation " + r.to_string() + " is not in D_2");
    if (!(theta_eval(g.orientation, r) == one))
      throw InvalidSpec("relation " + r.to_string() + " has theta-value other than 1");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

void require_quadratic_model(const GroupSpec& s, const char* what) {
  switch (s.kind()) {
    case GroupSpec::Kind::Demushkin:
    case GroupSpec::Kind::ThetaAbelian:
      if (s.p() == 2 && s.q() == 2)
        throw ModelOutOfScope(std::string(what) + " has no quadratic model for p = 2, q = 2");
      break;
    case GroupSpec::Kind::FibreProduct:
      require_quadratic_model(s.inner(), what);
      break;
    case GroupSpec::Kind::FreeProduct:
      require_quadratic_model(s.left(), what);
      require_quadratic_model(s.right(), what);
      break;
    default:
      break;
  }
}

std::vector<std::string> starred(std::vector<std::string> ls) {
  for (auto& l : ls) l += "*";
  return ls;
}

QuadraticPresentation demushkin_cohomology(const PrimeField& F, std::size_t d, std::vector<std::string> ls) {
  const auto at = [d](std::size_t i, std::size_t j) { return static_cast<std::uint32_t>(i * d + j); };
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < d; ++i) {
    rows.push_back({{at(i, i), 1}});
    for (std::size_t j = i + 1; j < d; ++j) {
      rows.push_back({{at(i, j), 1}, {at(j, i), 1}});
      const bool symplectic = i % 2 == 0 && j == i + 1;
      if (!symplectic) rows.push_back({{at(i, j), 1}});
    }
  }
  // chi_1 chi_2 = chi_3 chi_4 = ...
  for (std::size_t k = 2; k + 1 < d; k += 2) rows.push_back({{at(0, 1), 1}, {at(k, k + 1), F.neg(1)}});
  return QuadraticPresentation(F, std::move(ls), Subspace::span(F, d * d, rows));
}

QuadraticPresentation cohomology_rec(const GroupSpec& s) {
  const PrimeField F(s.p());
  switch (s.kind()) {
    case GroupSpec::Kind::Free:
      return dual_numbers(F, s.d(), starred(labels("x", 1, s.d())));
    case GroupSpec::Kind::Demushkin:
      if (s.variant() != DemushkinVariant::I)
        throw ModelOutOfScope("Demushkin cases (ii) and (iii) have nonzero Bockstein squares");
      return demushkin_cohomology(F, s.d(), starred(labels("x", 1, s.d())));
    case GroupSpec::Kind::ThetaAbelian:
      return exterior(F, s.d(), starred(labels("x", 0, s.d())));
    case GroupSpec::Kind::FibreProduct:
      return skew_tensor(cohomology_rec(s.inner()), exterior(F, s.c(), starred(labels("z", 1, s.c()))));
    case GroupSpec::Kind::FreeProduct:
      return direct_product(cohomology_rec(s.left()), cohomology_rec(s.right()));
    case GroupSpec::Kind::Custom:
      return cohomology_from_presentation(presentation_of(s));
  }
  throw std::logic_error("unknown spec kind");
}

QuadraticPresentation gr_rec(const GroupSpec& s) {
  const PrimeField F(s.p());
  switch (s.kind()) {
    case GroupSpec::Kind::Free:
      return tensor_algebra(F, s.d(), labels("x", 1, s.d()));
    case GroupSpec::Kind::Demushkin:
      if (s.variant() != DemushkinVariant::I) throw ModelOutOfScope("gr of a Demushkin group with q = 2");
      return demushkin_dual(F, s.d(), labels("x", 1, s.d()));
    case GroupSpec::Kind::ThetaAbelian:
      return symmetric(F, s.d(), labels("x", 0, s.d()));
    case GroupSpec::Kind::FibreProduct:
      return sym_tensor(gr_rec(s.inner()), symmetric(F, s.c(), labels("z", 1, s.c())));
    case GroupSpec::Kind::FreeProduct:
      return free_product(gr_rec(s.left()), gr_rec(s.right()));
    case GroupSpec::Kind::Custom:
      throw Unsupported("no closed-form graded algebra for an explicit presentation");
  }
  throw std::logic_error("unknown spec kind");
}

}  // namespace

QuadraticPresentation cohomology_ring(const GroupSpec& spec) {
  require_quadratic_model(spec, "cohomology ring");
  return cohomology_rec(spec);
}

QuadraticPresentation gr_algebra(const GroupSpec& spec) {
  require_quadratic_model(spec, "graded group algebra");
  return gr_rec(spec);
}

DualityReport verify_koszul_duality(const GroupSpec& spec, std::size_t max_degree) {
  const QuadraticPresentation dual = koszul_dual(cohomology_ring(spec));
  const QuadraticPresentation gr = gr_algebra(spec);
  DualityReport r;
  r.checked_up_to = max_degree;
  r.relation_subspaces_equal = dual.num_generators() == gr.num_generators() &&
                               subspace_equal(dual.relations(), gr.relations());
  r.dual_dims = hilbert(dual, max_degree);
  r.gr_dims = hilbert(gr, max_degree);
  std::size_t n = 0;
  while (n < max_degree && r.dual_dims[n + 1] == r.gr_dims[n + 1]) ++n;
  r.dims_equal_up_to = (r.dual_dims[0] == r.gr_dims[0]) ? n : 0;
  return r;
}

QuadraticPresentation cohomology_from_presentation(const GroupPresentation& pres) {
  const PrimeField F(pres.p);
  const std::size_t d = pres.num_generators();
  std::vector<SparseVector> images;
  for (const auto& r : pres.relations) images.push_back(to_sparse(psi2(r, F, d)));
  const Subspace span = Subspace::span(F, d * d, images);
  if (span.dim() != pres.relations.size())
    throw DegenerateRelationSpan("psi2 images of " + std::to_string(pres.relations.size()) +
                                 " relations span only " + std::to_string(span.dim()) + " dimensions");
  return QuadraticPresentation(F, starred(pres.generators), annihilator(span));
}

// ---------------------------------------------------------------------------
// Invariants

namespace {

struct Info {
  std::uint64_t q = 0;
  Abelianization ab;
  std::size_t centre = 0;
  std::optional<std::size_t> t1, f1;
  bool modeling_choice = false;
};

Info info_rec(const GroupSpec& s) {
  Info in;
  in.q = s.orientation_q();
  switch (s.kind()) {
    case GroupSpec::Kind::Free:
      in.ab.free_rank = s.d();
      in.centre = s.d() == 1 ? 1 : 0;
      break;
    case GroupSpec::Kind::Demushkin: {
      const std::size_t d = s.d();
      if (in.q > 0) {
        in.ab.free_rank = d - 1;
        in.ab.torsion = {in.q};
      } else {
        in.ab.free_rank = d;
      }
      // d = 2 is the semidirect product Z_p x| Z_p, itself theta-abelian.
      in.centre = d == 2 ? (in.q > 0 ? 1 : 2) : 0;
      if (in.q > 0 && s.variant() == DemushkinVariant::I) {
        in.t1 = 1;
        in.f1 = d - 2;
      }
      break;
    }
    case GroupSpec::Kind::ThetaAbelian:
      if (in.q > 0) {
        in.ab.free_rank = 1;
        in.ab.torsion.assign(s.d() - 1, in.q);
        in.centre = s.d() - 1;
        in.t1 = s.d() - 1;
        in.f1 = 0;
      } else {
        in.ab.free_rank = s.d();
        in.centre = s.d();
      }
      break;
    case GroupSpec::Kind::FibreProduct: {
      in = info_rec(s.inner());
      if (in.q > 0) {
        in.ab.torsion.insert(in.ab.torsion.end(), s.c(), in.q);
        if (in.t1) *in.t1 += s.c();
      } else {
        in.ab.free_rank += s.c();
      }
      in.centre += s.c();
      break;
    }
    case GroupSpec::Kind::FreeProduct: {
      const Info a = info_rec(s.left()), b = info_rec(s.right());
      in.q = s.orientation_q();
      in.ab.free_rank = a.ab.free_rank + b.ab.free_rank;
      in.ab.torsion = a.ab.torsion;
      in.ab.torsion.insert(in.ab.torsion.end(), b.ab.torsion.begin(), b.ab.torsion.end());
      in.centre = 0;
      if (in.q > 0) {
        // A trivially oriented factor of rank d lies in ker(theta) and adds d
        // free generators; the extra 1 counts the amalgamation generator.
        const bool a_nontrivial = a.q > 0, b_nontrivial = b.q > 0;
        const auto part = [](const Info& i, const GroupSpec& g, bool nontrivial) -> std::pair<std::size_t, std::size_t> {
          if (!nontrivial) return {0, g.rank()};
          if (!i.t1 || !i.f1) return {SIZE_MAX, SIZE_MAX};
          return {*i.t1, *i.f1};
        };
        const auto [ta, fa] = part(a, s.left(), a_nontrivial);
        const auto [tb, fb] = part(b, s.right(), b_nontrivial);
        if (ta != SIZE_MAX && tb != SIZE_MAX) {
          in.t1 = ta + tb;
          in.f1 = fa + fb + (a_nontrivial && b_nontrivial ? 1 : 0);
          in.modeling_choice = true;
        }
      }
      break;
    }
    case GroupSpec::Kind::Custom:
      in.ab = abelianization_from_presentation(presentation_of(s));
      break;
  }
  std::sort(in.ab.torsion.begin(), in.ab.torsion.end());
  return in;
}

}  // namespace

GroupInvariants invariants(const GroupSpec& spec) {
  GroupInvariants inv;
  inv.d = spec.rank();
  try {
    inv.r = cohomology_ring(spec).component(2)->dim();
  } catch (const ModelOutOfScope&) {
    inv.r = presentation_of(spec).relations.size();
  } catch (const DegenerateRelationSpan&) {
    inv.r = presentation_of(spec).relations.size();
  }
  const Info in = info_rec(spec);
  inv.abelianization = in.ab;
  inv.theta_centre_rank = in.centre;
  inv.t1 = in.t1;
  inv.f1 = in.f1;
  inv.t1_f1_modeling_choice = in.modeling_choice;
  return inv;
}

namespace {

void exponent_sums(const Word& w, const BigInt& scale, std::vector<BigInt>& out) {
  switch (w.kind()) {
    case Word::Kind::Gen:
      out[w.index()] += scale;
      return;
    case Word::Kind::Inverse:
      exponent_sums(w.child(), -scale, out);
      return;
    case Word::Kind::Power:
      exponent_sums(w.child(), scale * w.exponent(), out);
      return;
    case Word::Kind::Product:
      for (const auto& f : w.factors()) exponent_sums(f, scale, out);
      return;
    case Word::Kind::Commutator:
      return;
  }
}

}  // namespace

Abelianization abelianization_from_presentation(const GroupPresentation& pres) {
  const unsigned M = std::max(pres.precision(), 2u);
  const std::uint32_t p = pres.p;
  const std::size_t d = pres.num_generators();
  std::vector<std::vector<PadicApprox>> m;
  for (const auto& r : pres.relations) {
    std::vector<BigInt> sums(d, 0);
    exponent_sums(r, 1, sums);
    std::vector<PadicApprox> row;
    for (const auto& s : sums) row.push_back(PadicApprox::from_integer(p, M, s));
    m.push_back(std::move(row));
  }
  // Smith normal form over Z/p^M: pivot on an entry of least valuation.
  std::vector<unsigned> diag;
  std::size_t top = 0, left = 0;
  const std::size_t rows = m.size();
  while (top < rows && left < d) {
    unsigned best = M;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = top; i < rows; ++i)
      for (std::size_t j = left; j < d; ++j)
        if (!m[i][j].is_zero() && m[i][j].valuation() < best) {
          best = m[i][j].valuation();
          bi = i;
          bj = j;
        }
    if (best == M) break;
    std::swap(m[top], m[bi]);
    for (auto& row : m) std::swap(row[left], row[bj]);
    // pivot = p^best * u
    PadicApprox u = m[top][left];
    std::uint64_t pb = 1;
    for (unsigned k = 0; k < best; ++k) pb *= p;
    u.value /= pb;
    u = PadicApprox::from_integer(p, M, BigInt(u.value));
    const PadicApprox uinv = inverse(u);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == top || m[i][left].is_zero()) continue;
      PadicApprox factor = m[i][left];
      factor.value /= pb;  // divisible since the pivot valuation is minimal
      factor = factor * uinv;
      for (std::size_t j = left; j < d; ++j) m[i][j] = m[i][j] - factor * m[top][j];
    }
    for (std::size_t j = left + 1; j < d; ++j) {
      if (m[top][j].is_zero()) continue;
      PadicApprox factor = m[top][j];
      factor.value /= pb;
      factor = factor * uinv;
      for (std::size_t i = top; i < rows; ++i) m[i][j] = m[i][j] - factor * m[i][left];
    }
    diag.push_back(best);
    ++top;
    ++left;
  }
  Abelianization ab;
  ab.free_rank = d - diag.size();
  for (unsigned v : diag) {
    if (v == 0) continue;
    std::uint64_t q = 1;
    for (unsigned k = 0; k < v; ++k) q *= p;
    ab.torsion.push_back(q);
  }
  std::sort(ab.torsion.begin(), ab.torsion.end());
  return ab;
}

// ---------------------------------------------------------------------------
// Zassenhaus quotients

namespace {

std::vector<std::size_t> free_zassenhaus(std::uint32_t p, std::size_t d, std::size_t N) {
  std::vector<std::int64_t> target(N + 1, 1);
  for (std::size_t n = 1; n <= N; ++n) {
    if (target[n - 1] > (std::int64_t{1} << 62) / static_cast<std::int64_t>(d))
      throw ResourceLimit("envelope dimension " + std::to_string(d) + "^" + std::to_string(n) + " overflows");
    target[n] = target[n - 1] * static_cast<std::int64_t>(d);
  }
  // series = prod_{k<n} (1 + t^k + ... + t^{(p-1)k})^{l_k}, truncated at N.
  std::vector<std::int64_t> series(N + 1, 0);
  series[0] = 1;
  std::vector<std::size_t> l(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) {
    const std::int64_t ln = target[n] - series[n];
    if (ln < 0) throw std::logic_error("negative restricted PBW exponent");
    l[n] = static_cast<std::size_t>(ln);
    for (std::size_t rep = 0; rep < l[n]; ++rep) {
      for (std::size_t k = N; k >= n; --k) {
        std::int64_t add = 0;
        for (std::size_t e = 1; e < p && e * n <= k; ++e) add += series[k - e * n];
        series[k] += add;
      }
    }
  }
  return {l.begin() + 1, l.end()};
}

bool is_p_power(std::size_t n, std::uint32_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

std::vector<std::size_t> zassenhaus_dims(const GroupSpec& spec, std::size_t max_degree) {
  switch (spec.kind()) {
    case GroupSpec::Kind::Free:
      return free_zassenhaus(spec.p(), spec.d(), max_degree);
    case GroupSpec::Kind::ThetaAbelian: {
      std::vector<std::size_t> out(max_degree, 0);
      for (std::size_t i = 1; i <= max_degree; ++i)
        if (is_p_power(i, spec.p())) out[i - 1] = spec.d();
      return out;
    }
    case GroupSpec::Kind::FibreProduct: {
      auto out = zassenhaus_dims(spec.inner(), max_degree);
      for (std::size_t i = 1; i <= max_degree; ++i)
        if (is_p_power(i, spec.p())) out[i - 1] += spec.c();
      return out;
    }
    default:
      throw Unsupported("Zassenhaus dimensions are available for free, theta-abelian and their fibre products");
  }
}

}  // namespace koszulkit
