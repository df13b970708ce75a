#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "koszulkit/ncpoly.hpp"
#include "koszulkit/padic.hpp"

namespace koszulkit {

/// <generators | relations> with an orientation theta on the generators.
struct GroupPresentation {
  std::uint32_t p = 2;
  std::vector<std::string> generators;
  std::vector<Word> relations;
  Orientation orientation;

  std::size_t num_generators() const noexcept { return generators.size(); }
  unsigned precision() const { return orientation.values.empty() ? 0 : orientation.values.front().precision; }
};

}  // namespace koszulkit
