// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>

#include "koszulkit/cocycle.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/progroup.hpp"
#include "oracle.hpp"

using namespace koszulkit;

namespace {

struct Check {
  bool ok = true;
  std::string first_failure;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

std::string tag(const std::string& name, std::uint32_t p, std::size_t d) {
  return name + " p=" + std::to_string(p) + " d=" + std::to_string(d);
}

GradedDims to_dims(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

QuadraticPresentation random_algebra(std::mt19937& rng, const PrimeField& F, std::size_t d) {
  const auto rows = oracle::random_rows(rng, rng() % (d * d + 1), d * d, F.p());
  return QuadraticPresentation(F, default_labels(d), Subspace::span(F, d * d, rows));
}

// Rank of the multiplication A_1 x A_1 -> A_2 restricted to the given pairs.
std::size_t block_rank(const FpMatrix& m, std::size_t d, const std::function<bool(std::size_t, std::size_t)>& keep) {
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (keep(i, j)) {
        const auto r = m.row(i * d + j);
        rows.emplace_back(r.begin(), r.end());
      }
  if (rows.empty()) return 0;
  return rank(FpMatrix::from_rows(m.field(), rows, m.cols()));
}

void criterion1(Check& c) {
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto r = verify_koszul_duality(GroupSpec::free(p, d), 6);
      GradedDims powers;
      for (std::size_t n = 0; n <= 6; ++n) powers.push_back(oracle::ipow(d, n));
      c.expect(r.relation_subspaces_equal && r.dims_equal_up_to == 6, tag("Free", p, d));
      c.expect(r.gr_dims == powers && r.dual_dims == powers, tag("Free dims", p, d));
    }
}

void criterion2(Check& c) {
  for (std::uint32_t p : {3u, 5u})
    for (std::size_t d : {2u, 4u}) {
      const auto spec = GroupSpec::demushkin(p, d, p);
      const auto r = verify_koszul_duality(spec, 8);
      const auto expected = to_dims(oracle::reciprocal({1, -static_cast<std::int64_t>(d), 1}, 8));
      c.expect(r.relation_subspaces_equal, tag("Demushkin subspaces", p, d));
      c.expect(r.gr_dims == expected && r.dual_dims == expected, tag("Demushkin dims", p, d));
    }
}

void criterion3(Check& c) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t d = 1; d <= 4; ++d) {
      const std::uint64_t q = p == 2 ? 4 : p;
      const auto spec = GroupSpec::theta_abelian(p, d, q);
      const PrimeField F(p);
      const auto h = cohomology_ring(spec);
      const auto g = gr_algebra(spec);
      c.expect(subspace_equal(h.relations(), exterior(F, d).relations()), tag("exterior", p, d));
      c.expect(subspace_equal(g.relations(), symmetric(F, d).relations()), tag("symmetric", p, d));
      c.expect(subspace_equal(koszul_dual(h).relations(), g.relations()), tag("dual", p, d));
      const auto hd = hilbert(h, 6), gd = hilbert(g, 6);
      for (std::size_t n = 0; n <= 6; ++n) {
        c.expect(hd[n] == static_cast<std::size_t>(oracle::choose(d, n)), tag("C(d,n)", p, d));
        c.expect(gd[n] == static_cast<std::size_t>(oracle::choose(n + d - 1, n)), tag("C(n+d-1,n)", p, d));
      }
    }
}

void criterion4(Check& c) {
  for (std::uint32_t p : {2u, 3u}) {
    const PrimeField F(p);
    for (const auto& [name, a] : std::vector<std::pair<std::string, QuadraticPresentation>>{
             {"exterior(2)", exterior(F, 2)},
             {"exterior(3)", exterior(F, 3)},
             {"demushkin_dual(2)", demushkin_dual(F, 2)},
             {"tensor(3)", tensor_algebra(F, 3)}}) {
      const auto t = bar_tor(a, 4, 4);
      for (std::size_t i = 0; i <= 4; ++i)
        for (std::size_t j = 0; j <= 4; ++j)
          if (i != j) c.expect(t.at(i, j) == 0, name + " off-diagonal p=" + std::to_string(p));
    }
    for (std::size_t d = 1; d <= 3; ++d) {
      const auto t = bar_tor(exterior(F, d), 4, 4);
      const auto sym = hilbert(symmetric(F, d), 4);
      for (std::size_t i = 0; i <= 4; ++i) c.expect(t.at(i, i) == sym[i], tag("exterior diagonal", p, d));
    }
  }
}

void criterion5(Check& c) {
  const PrimeField F(3);
  std::vector<std::pair<std::string, QuadraticPresentation>> algebras;
  for (std::size_t d = 1; d <= 4; ++d) {
    algebras.emplace_back("tensor(" + std::to_string(d) + ")", tensor_algebra(F, d));
    algebras.emplace_back("exterior(" + std::to_string(d) + ")", exterior(F, d));
  }
  algebras.emplace_back("demushkin_dual(2)", demushkin_dual(F, 2));
  algebras.emplace_back("demushkin_dual(4)", demushkin_dual(F, 4));
  for (const auto& [name, a] : algebras)
    for (auto v : hilbert_criterion(a, 8)) c.expect(v == 0, name);
}

void criterion6(Check& c) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 25; ++t) {
    const PrimeField F(t % 2 ? 3 : 2);
    const auto a = random_algebra(rng, F, 1 + rng() % 3);
    const auto b = random_algebra(rng, F, 1 + rng() % 3);
    const auto ka = koszul_dual(a), kb = koszul_dual(b);
    const std::string n = "trial " + std::to_string(t);
    c.expect(subspace_equal(koszul_dual(direct_product(a, b)).relations(), free_product(ka, kb).relations()),
             n + " direct/free");
    c.expect(subspace_equal(koszul_dual(sym_tensor(a, b)).relations(), skew_tensor(ka, kb).relations()),
             n + " sym/skew");
  }
}

void criterion7(Check& c) {
  for (std::uint32_t p : {3u, 5u})
    for (std::size_t d : {2u, 4u}) {
      const auto fib1 = cohomology_ring(GroupSpec::fibre_product(GroupSpec::demushkin(p, d, p), 1));
      c.expect(fib1.component(2)->dim() == d + 1, tag("dim H2", p, d));
      for (std::size_t cc = 1; cc <= 2; ++cc) {
        const auto h = cohomology_ring(GroupSpec::fibre_product(GroupSpec::demushkin(p, d, p), cc));
        const std::size_t n = d + cc;
        const FpMatrix m = mult_map(h, 1, 1);
        const auto inner = block_rank(m, n, [&](std::size_t i, std::size_t j) { return i < d && j < d; });
        const auto mixed = block_rank(m, n, [&](std::size_t i, std::size_t j) { return (i < d) != (j < d); });
        const auto outer = block_rank(m, n, [&](std::size_t i, std::size_t j) { return i >= d && j >= d; });
        const std::size_t total = h.component(2)->dim();
        const std::string t = tag("decomposition c=" + std::to_string(cc), p, d);
        c.expect(inner == 1 && mixed == d * cc && outer == static_cast<std::size_t>(oracle::choose(cc, 2)), t);
        c.expect(total == inner + mixed + outer && rank(m) == total, t + " direct sum");
      }
    }
}

void criterion8(Check& c) {
  for (std::uint32_t p : {3u, 5u})
    for (const auto& [name, spec] : std::vector<std::pair<std::string, GroupSpec>>{
             {"Demushkin(2)", GroupSpec::demushkin(p, 2, p)},
             {"Demushkin(4)", GroupSpec::demushkin(p, 4, p)},
             {"ThetaAbelian(2)", GroupSpec::theta_abelian(p, 2, p)},
             {"ThetaAbelian(3)", GroupSpec::theta_abelian(p, 3, p)}}) {
      const auto from_pres = cohomology_from_presentation(presentation_of(spec));
      c.expect(subspace_equal(from_pres.relations(), cohomology_ring(spec).relations()),
               name + " p=" + std::to_string(p));
    }
}

void criterion9(Check& c) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto kz = GroupSpec::custom(p, {"x", "y", "z"},
                                      {Word::product({Word::power(Word::gen(2), p), Word::commutator(Word::gen(0), Word::gen(1))})},
                                      {1, 1, 1});
    const auto t = cyclotomic_obstruction(presentation_of(kz, 8), 8);
    const auto v = t.entries[2][0];
    c.expect(v == PadicApprox::from_integer(p, 8, p) && !v.reduced_to(2).is_zero(), "KZ value p=" + std::to_string(p));
    c.expect(t.entries[0][0].is_zero() && t.entries[1][0].is_zero(), "KZ x,y entries p=" + std::to_string(p));
    std::vector<GroupSpec> zero;
    if (p == 2)
      zero = {GroupSpec::demushkin(2, 2, 4), GroupSpec::demushkin(2, 4, 8), GroupSpec::theta_abelian(2, 3, 4)};
    else
      zero = {GroupSpec::demushkin(p, 2, p), GroupSpec::demushkin(p, 4, p), GroupSpec::theta_abelian(p, 2, p),
              GroupSpec::theta_abelian(p, 4, p)};
    for (const auto& s : zero) {
      const auto z = cyclotomic_obstruction(presentation_of(s, 8), 8);
      c.expect(!z.obstructed(), "zero table p=" + std::to_string(p));
    }
  }
}

void criterion10(Check& c) {
  const std::vector<std::size_t> ppow{1, 2, 4, 8};
  const auto expected = [&](std::size_t v) {
    std::vector<std::size_t> out(8, 0);
    for (auto i : ppow) out[i - 1] = v;
    return out;
  };
  for (std::size_t d = 1; d <= 4; ++d)
    for (std::uint64_t q : {2u, 4u, 8u}) {
      c.expect(zassenhaus_dims(GroupSpec::theta_abelian(2, d, q), 8) == expected(d), tag("ThetaAbelian", 2, d));
      for (std::size_t cc = 1; cc <= 2; ++cc)
        c.expect(zassenhaus_dims(GroupSpec::fibre_product(GroupSpec::theta_abelian(2, d, q), cc), 8) == expected(d + cc),
                 tag("FibreProduct", 2, d));
    }
  for (std::uint32_t p : {2u, 3u})
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto l = zassenhaus_dims(GroupSpec::free(p, d), 6);
      // prod over n of ((1 - t^{pn}) / (1 - t^n))^{l_n}
      std::vector<std::int64_t> series(7, 0);
      series[0] = 1;
      for (std::size_t n = 1; n <= 6; ++n)
        for (std::size_t rep = 0; rep < l[n - 1]; ++rep) {
          std::vector<std::int64_t> next(7, 0);
          for (std::size_t k = 0; k <= 6; ++k)
            for (std::size_t e = 0; e < p && k + e * n <= 6; ++e) next[k + e * n] += series[k];
          series = next;
        }
      for (std::size_t n = 0; n <= 6; ++n)
        c.expect(series[n] == static_cast<std::int64_t>(oracle::ipow(d, n)), tag("Free PBW", p, d));
    }
}

void criterion11(Check& c) {
  for (std::uint32_t p : {3u, 5u})
    for (std::size_t d : {2u, 4u, 6u})
      for (std::uint64_t q : {std::uint64_t{p}, std::uint64_t{p} * p}) {
        const auto spec = GroupSpec::demushkin(p, d, q);
        const auto inv = invariants(spec);
        const Abelianization expected{d - 1, {q}};
        c.expect(inv.abelianization == expected, tag("Demushkin ab", p, d));
        c.expect(abelianization_from_presentation(presentation_of(spec)) == expected, tag("Demushkin SNF", p, d));
        c.expect(inv.t1 == 1u && inv.f1 == d - 2, tag("Demushkin t1/f1", p, d));
      }
  for (std::uint32_t p : {3u, 5u})
    for (std::size_t d = 2; d <= 4; ++d) {
      const auto inv = invariants(GroupSpec::theta_abelian(p, d, p));
      c.expect(inv.t1 == d - 1 && inv.f1 == 0u, tag("ThetaAbelian t1/f1", p, d));
    }
}

void criterion12(Check& c) {
  std::mt19937 rng(12);
  const PrimeField F(2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + rng() % 2;
    const auto rows = oracle::random_rows(rng, rng() % (d * d + 1), d * d, 2);
    const QuadraticPresentation a(F, default_labels(d), Subspace::span(F, d * d, rows));
    for (std::size_t n = 0; n <= 4; ++n)
      c.expect(a.component(n)->dim() == oracle::component_dim(rows, d, n, 2), "component trial " + std::to_string(t));
    const auto tor = bar_tor(a, 4, 4);
    for (std::size_t j = 0; j <= 4; ++j) {
      std::int64_t lhs = 0, rhs = 0;
      for (std::size_t i = 0; i <= 4; ++i) {
        const std::int64_t s = i % 2 ? -1 : 1;
        lhs += s * static_cast<std::int64_t>(tor.at(i, j));
        rhs += s * static_cast<std::int64_t>(tor.chain[i][j]);
      }
      c.expect(lhs == rhs, "Euler characteristic trial " + std::to_string(t));
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"free-group duality", criterion1},
      {"Demushkin duality", criterion2},
      {"theta-abelian duality", criterion3},
      {"Koszulity of elementary families", criterion4},
      {"Hilbert criterion", criterion5},
      {"product dualities", criterion6},
      {"fibre-product cohomology", criterion7},
      {"psi2 reconstruction", criterion8},
      {"cyclotomicity obstruction", criterion9},
      {"Zassenhaus quotients", criterion10},
      {"abelianization invariants", criterion11},
      {"oracle equivalence", criterion12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    if (c.ok) {
      std::printf("PASS criterion %zu: %s\n", i + 1, criteria[i].first.c_str());
    } else {
      std::printf("FAIL criterion %zu: %s (%s)\n", i + 1, criteria[i].first.c_str(), c.first_failure.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
