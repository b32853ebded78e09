#pragma once

#include <vector>

#include "massey/errors.hpp"

namespace massey {

// Homomorphism from the free pro-p group on x1..xd to Z/p, given by its
// values on the generators.
struct Character {
  std::vector<int> values;

  int d() const { return static_cast<int>(values.size()); }
  // Value on x_gen (1-based).
  int operator()(int gen) const {
    if (gen < 1 || gen > d()) throw IndexError("character index out of range");
    return values[gen - 1];
  }

  bool operator==(const Character&) const = default;
};

// The dual-basis character sending x_gen to 1 and every other generator to 0.
Character dual_character(int d, int gen);
Character negate_character(const Character& chi, long long p);
// Entrywise reduction into [0, p).
Character reduce_character(const Character& chi, long long p);

}  // namespace massey
