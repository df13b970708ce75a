#pragma once

// Truncated Koszulity certification through the reduced bar complex.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "koszulkit/quadalg.hpp"

namespace koszulkit {

inline constexpr std::size_t kDefaultChainLimit = 2'000'000;

/// dim Tor^A_{i,j}(F, F) for 0 <= i <= imax, 0 <= j <= jmax, plus the chain
/// space dimensions dim B_{i,j} of the reduced bar complex it came from.
struct TorTable {
  std::size_t imax = 0;
  std::size_t jmax = 0;
  std::vector<std::vector<std::size_t>> tor;    // [i][j]
  std::vector<std::vector<std::size_t>> chain;  // [i][j]

  std::size_t at(std::size_t i, std::size_t j) const { return tor.at(i).at(j); }
};

/// Reduced bar complex B_{i,j} = sum over compositions j = j_1 + ... + j_i of
/// A_{j_1} (x) ... (x) A_{j_i}, with d = sum_k (-1)^k (multiply factors k, k+1).
/// Throws ResourceLimit when some dim B_{i,j} exceeds `chain_limit`.
TorTable bar_tor(const QuadraticPresentation& a, std::size_t imax, std::size_t jmax,
                 std::size_t chain_limit = kDefaultChainLimit);

/// Coefficients 0..N of h_A(t) h_{A^!}(-t) - 1.
std::vector<std::int64_t> hilbert_criterion(const QuadraticPresentation& a, std::size_t max_degree);

struct KoszulReport {
  std::size_t checked_bound = 0;
  /// Largest b <= checked_bound with Tor_{i,j} = 0 for all i < j <= b.
  std::size_t koszul_up_to = 0;
  /// First nonzero off-diagonal bidegree (ordered by j, then i).
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::vector<std::int64_t> hilbert_defect;
  TorTable tor;

  bool koszul() const noexcept { return !witness.has_value(); }
};

KoszulReport is_koszul_up_to(const QuadraticPresentation& a, std::size_t bound,
                             std::size_t chain_limit = kDefaultChainLimit);

}  // namespace koszulkit
