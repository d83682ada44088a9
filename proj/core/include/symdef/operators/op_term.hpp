#pragma once

#include <compare>
#include <cstddef>
#include <map>

#include "symdef/kernel/rational.hpp"

namespace symdef {

/// Coordinate of a normal-form operator monomial x^xdeg theta^theta D^power,
/// where D is d/dx (classical) or eta_bar (super).
struct OpTerm {
  std::size_t power = 0;
  std::size_t xdeg = 0;
  int theta = 0;

  friend auto operator<=>(const OpTerm&, const OpTerm&) = default;
};

using OpCoordinates = std::map<OpTerm, Rational>;

}  // namespace symdef
