#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chainhom/presentation.hpp"

namespace chainhom {

/// Closed coset table of the trivial subgroup: the right regular action of a
/// finite group. Column 2g is generator g, column 2g+1 its inverse. Coset 0 is
/// the identity.
struct CosetTable {
  std::size_t generator_count = 0;
  std::vector<std::vector<std::int64_t>> table;
  std::size_t defined = 0;  // cosets defined during enumeration

  std::size_t order() const noexcept { return table.size(); }
  static std::size_t column(Letter letter) { return 2 * generator_of(letter) + (letter < 0 ? 1 : 0); }
};

/// HLT coset enumeration with coincidence processing. Returns nullopt when
/// more than `max_cosets` cosets would be defined.
std::optional<CosetTable> enumerate_cosets(std::size_t generator_count, const std::vector<Word>& relators,
                                           std::size_t max_cosets);

}  // namespace chainhom
