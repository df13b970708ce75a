#include "koszulkit/quadalg.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "koszulkit/errors.hpp"

namespace koszulkit {

namespace {

std::size_t ipow(std::size_t d, std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (d && r > kMaxComponentAmbient / d)
      throw ResourceLimit("component ambient dimension " + std::to_string(d) + "^" + std::to_string(n) +
                          " exceeds " + std::to_string(kMaxComponentAmbient));
    r *= d;
  }
  return r;
}

ComponentBasis make_basis(std::size_t n, Subspace ideal) {
  ComponentBasis c{n, std::move(ideal), {}, {}};
  c.normal = quotient_basis(c.ideal.ambient_dim(), c.ideal);
  c.normal_position.assign(c.ideal.ambient_dim(), -1);
  for (std::size_t k = 0; k < c.normal.size(); ++k) c.normal_position[c.normal[k]] = static_cast<std::int32_t>(k);
  return c;
}

}  // namespace

struct QuadraticPresentation::Cache {
  std::mutex mutex;
  std::vector<std::shared_ptr<const ComponentBasis>> components;
};

QuadraticPresentation::QuadraticPresentation(PrimeField field, std::vector<std::string> generators,
                                             Subspace relations)
    : field_(field),
      generators_(std::move(generators)),
      relations_(std::move(relations)),
      cache_(std::make_shared<Cache>()) {
  const std::size_t d = generators_.size();
  if (relations_.ambient_dim() != d * d)
    throw DimensionMismatch("relation subspace lives in F_p^" + std::to_string(relations_.ambient_dim()) +
                            ", expected F_p^" + std::to_string(d * d));
  if (!(relations_.field() == field_)) throw FieldMismatch("relation subspace over a different field");
  std::set<std::string> seen(generators_.begin(), generators_.end());
  if (seen.size() != d) throw InvalidArgument("generator labels are not distinct");
}

std::shared_ptr<const ComponentBasis> QuadraticPresentation::component(std::size_t n) const {
  std::lock_guard lock(cache_->mutex);
  auto& memo = cache_->components;
  const std::size_t d = generators_.size();
  while (memo.size() <= n) {
    const std::size_t k = memo.size();
    if (k <= 1) {
      memo.push_back(std::make_shared<ComponentBasis>(make_basis(k, Subspace(field_, ipow(d, k)))));
      continue;
    }
    if (k == 2) {
      memo.push_back(std::make_shared<ComponentBasis>(make_basis(2, relations_)));
      continue;
    }
    const std::size_t ambient = ipow(d, k);
    const auto& prev = memo[k - 1]->ideal;
    if (prev.dim() == prev.ambient_dim()) {
      memo.push_back(std::make_shared<ComponentBasis>(make_basis(k, Subspace::full(field_, ambient))));
      continue;
    }
    // I_k = I_{k-1} (x) V + V^{(x)(k-2)} (x) R1. The first summand is already
    // in reduced echelon form.
    std::vector<SparseVector> seed;
    seed.reserve(prev.dim() * d);
    for (const auto& row : prev.rows()) {
      for (std::size_t letter = 0; letter < d; ++letter) {
        SparseVector r;
        r.reserve(row.size());
        for (auto [c, x] : row) r.push_back({static_cast<std::uint32_t>(c * d + letter), x});
        seed.push_back(std::move(r));
      }
    }
    EchelonBuilder builder(Subspace::from_reduced_rows(field_, ambient, std::move(seed)));
    const std::size_t prefixes = ipow(d, k - 2);
    const std::size_t block = d * d;
    for (std::size_t u = 0; u < prefixes; ++u) {
      for (const auto& rel : relations_.rows()) {
        SparseVector r;
        r.reserve(rel.size());
        for (auto [c, x] : rel) r.push_back({static_cast<std::uint32_t>(u * block + c), x});
        builder.add(r);
      }
    }
    memo.push_back(std::make_shared<ComponentBasis>(make_basis(k, std::move(builder).finish())));
  }
  return memo[n];
}

ComponentBasis component(const QuadraticPresentation& a, std::size_t n) { return *a.component(n); }

GradedDims hilbert(const QuadraticPresentation& a, std::size_t max_degree) {
  GradedDims dims;
  dims.reserve(max_degree + 1);
  for (std::size_t n = 0; n <= max_degree; ++n) dims.push_back(a.component(n)->dim());
  return dims;
}

std::vector<Residue> normal_form(const QuadraticPresentation& a, std::size_t n, std::span<const Residue> v) {
  auto comp = a.component(n);
  if (v.size() != comp->ideal.ambient_dim())
    throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " for degree " + std::to_string(n) +
                            " (expected " + std::to_string(comp->ideal.ambient_dim()) + ")");
  std::vector<Residue> out(comp->dim(), 0);
  for (auto [c, x] : comp->ideal.reduce(to_sparse(v))) out[comp->normal_position[c]] = x;
  return out;
}

FpMatrix mult_map(const QuadraticPresentation& a, std::size_t i, std::size_t j) {
  const auto& F = a.field();
  auto ci = a.component(i);
  auto cj = a.component(j);
  auto ck = a.component(i + j);
  const std::size_t shift = cj->ideal.ambient_dim();
  FpMatrix m(F, ci->dim() * cj->dim(), ck->dim());
  for (std::size_t u = 0; u < ci->dim(); ++u) {
    for (std::size_t v = 0; v < cj->dim(); ++v) {
      const std::size_t row = u * cj->dim() + v;
      const std::size_t mono = ci->normal[u] * shift + cj->normal[v];
      if (auto pos = ck->normal_position[mono]; pos >= 0) {
        m(row, pos) = 1;
        continue;
      }
      // mono is a pivot: e_mono = pivot row - (rest), so it reduces to -(rest).
      const auto& prow = ck->ideal.rows()[ck->ideal.pivot_row(mono)];
      for (std::size_t t = 1; t < prow.size(); ++t)
        m(row, ck->normal_position[prow[t].col]) = F.neg(prow[t].val);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

namespace {

void check_same_field(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatch("algebras over F_" + std::to_string(a.field().p()) + " and F_" +
                        std::to_string(b.field().p()));
}

std::vector<std::string> joined_labels(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  std::vector<std::string> out;
  for (const auto& l : a.generators()) out.push_back("A." + l);
  for (const auto& l : b.generators()) out.push_back("B." + l);
  return out;
}

// Rows of R1 for a block of generators starting at `offset` inside d total.
void embed_block(const Subspace& rel, std::size_t sub_d, std::size_t offset, std::size_t d,
                 std::vector<SparseVector>& out) {
  for (const auto& row : rel.rows()) {
    SparseVector r;
    for (auto [c, x] : row) {
      const std::size_t i = c / sub_d + offset, j = c % sub_d + offset;
      r.push_back({static_cast<std::uint32_t>(i * d + j), x});
    }
    out.push_back(std::move(r));
  }
}

enum class Cross { None, Zero, Commute, Anticommute };

QuadraticPresentation combine(const QuadraticPresentation& a, const QuadraticPresentation& b, Cross cross) {
  check_same_field(a, b);
  const auto& F = a.field();
  const std::size_t da = a.num_generators(), db = b.num_generators(), d = da + db;
  std::vector<SparseVector> rows;
  embed_block(a.relations(), da, 0, d, rows);
  embed_block(b.relations(), db, da, d, rows);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = da; j < d; ++j) {
      const auto ij = static_cast<std::uint32_t>(i * d + j), ji = static_cast<std::uint32_t>(j * d + i);
      switch (cross) {
        case Cross::None:
          break;
        case Cross::Zero:
          rows.push_back({{ij, 1}});
          rows.push_back({{ji, 1}});
          break;
        case Cross::Commute:
          rows.push_back({{ij, 1}, {ji, F.neg(1)}});
          break;
        case Cross::Anticommute:
          rows.push_back({{ij, 1}, {ji, 1}});
          break;
      }
    }
  }
  return QuadraticPresentation(F, joined_labels(a, b), Subspace::span(F, d * d, rows));
}

std::vector<std::string> labels_or_default(std::vector<std::string> labels, std::size_t d) {
  if (labels.empty()) return default_labels(d);
  if (labels.size() != d) throw InvalidArgument("expected " + std::to_string(d) + " labels");
  return labels;
}

}  // namespace

QuadraticPresentation direct_product(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  return combine(a, b, Cross::Zero);
}
QuadraticPresentation free_product(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  return combine(a, b, Cross::None);
}
QuadraticPresentation sym_tensor(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  return combine(a, b, Cross::Commute);
}
QuadraticPresentation skew_tensor(const QuadraticPresentation& a, const QuadraticPresentation& b) {
  return combine(a, b, Cross::Anticommute);
}

QuadraticPresentation koszul_dual(const QuadraticPresentation& a) {
  std::vector<std::string> labels;
  for (const auto& l : a.generators())
    labels.push_back(!l.empty() && l.back() == '*' ? l.substr(0, l.size() - 1) : l + "*");
  return QuadraticPresentation(a.field(), std::move(labels), annihilator(a.relations()));
}

std::vector<std::string> default_labels(std::size_t d, const std::string& stem) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= d; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

QuadraticPresentation tensor_algebra(PrimeField field, std::size_t d, std::vector<std::string> labels) {
  return QuadraticPresentation(field, labels_or_default(std::move(labels), d), Subspace(field, d * d));
}

QuadraticPresentation symmetric(PrimeField field, std::size_t d, std::vector<std::string> labels) {
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      rows.push_back({{static_cast<std::uint32_t>(i * d + j), 1}, {static_cast<std::uint32_t>(j * d + i), field.neg(1)}});
  return QuadraticPresentation(field, labels_or_default(std::move(labels), d), Subspace::span(field, d * d, rows));
}

QuadraticPresentation exterior(PrimeField field, std::size_t d, std::vector<std::string> labels) {
  std::vector<SparseVector> rows;
  for (std::size_t i = 0; i < d; ++i) {
    rows.push_back({{static_cast<std::uint32_t>(i * d + i), 1}});
    for (std::size_t j = i + 1; j < d; ++j)
      rows.push_back({{static_cast<std::uint32_t>(i * d + j), 1}, {static_cast<std::uint32_t>(j * d + i), 1}});
  }
  return QuadraticPresentation(field, labels_or_default(std::move(labels), d), Subspace::span(field, d * d, rows));
}

QuadraticPresentation dual_numbers(PrimeField field, std::size_t d, std::vector<std::string> labels) {
  return QuadraticPresentation(field, labels_or_default(std::move(labels), d), Subspace::full(field, d * d));
}

QuadraticPresentation demushkin_dual(PrimeField field, std::size_t d, std::vector<std::string> labels) {
  if (d == 0 || d % 2) throw InvalidArgument("demushkin_dual needs a positive even number of generators");
  std::vector<std::int64_t> rel(d * d, 0);
  for (std::size_t i = 0; i + 1 < d; i += 2) {
    rel[i * d + i + 1] = 1;
    rel[(i + 1) * d + i] = -1;
  }
  return QuadraticPresentation(field, labels_or_default(std::move(labels), d), Subspace::span(field, d * d, {rel}));
}

}  // namespace koszulkit
