#include "koszulkit/koszul.hpp"

#include <algorithm>
#include <map>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

using Composition = std::vector<std::size_t>;

void compositions_rec(std::size_t parts, std::size_t total, Composition& cur, std::vector<Composition>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    cur.push_back(first);
    compositions_rec(parts - 1, total - first, cur, out);
    cur.pop_back();
  }
}

struct Block {
  Composition parts;
  std::vector<std::size_t> factor_dims;
  std::size_t offset = 0;
  std::size_t size = 0;
};

struct ChainSpace {
  std::vector<Block> blocks;
  std::map<Composition, std::size_t> index;
  std::size_t dim = 0;
};

class BarComplex {
 public:
  BarComplex(const QuadraticPresentation& a, std::size_t chain_limit) : a_(a), limit_(chain_limit) {}

  const ChainSpace& space(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    if (auto it = spaces_.find(key); it != spaces_.end()) return it->second;
    ChainSpace s;
    std::vector<Composition> comps;
    Composition cur;
    compositions_rec(i, j, cur, comps);
    for (auto& c : comps) {
      Block b;
      b.size = 1;
      for (auto part : c) {
        b.factor_dims.push_back(a_.component(part)->dim());
        b.size *= b.factor_dims.back();
        if (b.size > limit_) break;
      }
      b.offset = s.dim;
      b.parts = c;
      s.dim += b.size;
      if (s.dim > limit_)
        throw ResourceLimit("bar complex B_{" + std::to_string(i) + "," + std::to_string(j) + "} exceeds " +
                            std::to_string(limit_) + " basis elements");
      s.index.emplace(c, s.blocks.size());
      s.blocks.push_back(std::move(b));
    }
    return spaces_.emplace(key, std::move(s)).first->second;
  }

  /// Rank of d_i : B_{i,j} -> B_{i-1,j}.
  std::size_t differential_rank(std::size_t i, std::size_t j) {
    if (i <= 1 || i > j) return 0;
    const auto& src = space(i, j);
    const auto& dst = space(i - 1, j);
    if (src.dim == 0 || dst.dim == 0) return 0;
    const auto& F = a_.field();
    EchelonBuilder builder(F, dst.dim);
    std::vector<std::size_t> digits(i);
    std::vector<std::pair<std::uint32_t, Residue>> acc;
    for (const auto& b : src.blocks) {
      for (std::size_t e = 0; e < b.size; ++e) {
        std::size_t rest = e;
        for (std::size_t k = i; k-- > 0;) {
          digits[k] = rest % b.factor_dims[k];
          rest /= b.factor_dims[k];
        }
        acc.clear();
        for (std::size_t k = 0; k + 1 < i; ++k) {
          const Residue sign = (k % 2 == 0) ? F.neg(1) : Residue{1};  // (-1)^{k+1}
          const auto& prod = product_rows(b.parts[k], b.parts[k + 1]);
          const auto& row = prod[digits[k] * b.factor_dims[k + 1] + digits[k + 1]];
          if (row.empty()) continue;
          Composition merged = b.parts;
          merged[k] += merged[k + 1];
          merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(k) + 1);
          const auto& tb = dst.blocks[dst.index.at(merged)];
          for (auto [t, v] : row) {
            std::size_t idx = 0;
            for (std::size_t m = 0; m + 1 < i; ++m) {
              std::size_t digit = m < k ? digits[m] : (m == k ? t : digits[m + 1]);
              idx = idx * tb.factor_dims[m] + digit;
            }
            acc.emplace_back(static_cast<std::uint32_t>(tb.offset + idx), F.mul(sign, v));
          }
        }
        std::sort(acc.begin(), acc.end(), [](auto& x, auto& y) { return x.first < y.first; });
        SparseVector row;
        for (auto [c, x] : acc) {
          if (!row.empty() && row.back().col == c)
            row.back().val = F.add(row.back().val, x);
          else
            row.push_back({c, x});
          if (row.back().val == 0) row.pop_back();
        }
        builder.add(row);
      }
    }
    return builder.dim();
  }

 private:
  const std::vector<SparseVector>& product_rows(std::size_t p, std::size_t q) {
    auto key = std::make_pair(p, q);
    if (auto it = products_.find(key); it != products_.end()) return it->second;
    FpMatrix m = mult_map(a_, p, q);
    std::vector<SparseVector> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = to_sparse(m.row(r));
    return products_.emplace(key, std::move(rows)).first->second;
  }

  const QuadraticPresentation& a_;
  std::size_t limit_;
  std::map<std::pair<std::size_t, std::size_t>, ChainSpace> spaces_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<SparseVector>> products_;
};

}  // namespace

TorTable bar_tor(const QuadraticPresentation& a, std::size_t imax, std::size_t jmax, std::size_t chain_limit) {
  if (imax > jmax) throw InvalidArgument("bar_tor needs imax <= jmax");
  BarComplex bar(a, chain_limit);
  TorTable t;
  t.imax = imax;
  t.jmax = jmax;
  t.tor.assign(imax + 1, std::vector<std::size_t>(jmax + 1, 0));
  t.chain.assign(imax + 1, std::vector<std::size_t>(jmax + 1, 0));
  t.tor[0][0] = 1;
  t.chain[0][0] = 1;
  for (std::size_t j = 1; j <= jmax; ++j) {
    std::vector<std::size_t> ranks(std::min(imax, j) + 2, 0);
    for (std::size_t i = 2; i <= std::min(imax + 1, j); ++i) ranks[i] = bar.differential_rank(i, j);
    for (std::size_t i = 1; i <= std::min(imax, j); ++i) {
      const std::size_t dim = bar.space(i, j).dim;
      t.chain[i][j] = dim;
      t.tor[i][j] = dim - ranks[i] - ranks[i + 1];
    }
  }
  return t;
}

std::vector<std::int64_t> hilbert_criterion(const QuadraticPresentation& a, std::size_t max_degree) {
  const auto h = hilbert(a, max_degree);
  const auto hd = hilbert(koszul_dual(a), max_degree);
  std::vector<std::int64_t> out(max_degree + 1, 0);
  for (std::size_t n = 0; n <= max_degree; ++n) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const auto term = static_cast<std::int64_t>(h[n - k]) * static_cast<std::int64_t>(hd[k]);
      s += (k % 2 ? -term : term);
    }
    out[n] = s - (n == 0 ? 1 : 0);
  }
  return out;
}

KoszulReport is_koszul_up_to(const QuadraticPresentation& a, std::size_t bound, std::size_t chain_limit) {
  KoszulReport r;
  r.checked_bound = bound;
  r.tor = bar_tor(a, bound, bound, chain_limit);
  r.koszul_up_to = bound;
  for (std::size_t j = 1; j <= bound && !r.witness; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (r.tor.at(i, j) != 0) {
        r.witness = std::make_pair(i, j);
        r.koszul_up_to = j - 1;
        break;
      }
    }
  }
  r.hilbert_defect = hilbert_criterion(a, bound);
  return r;
}

}  // namespace koszulkit
