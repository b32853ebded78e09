#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "massey/character.hpp"
#include "massey/magnus.hpp"
#include "massey/unipotent.hpp"
#include "massey/words.hpp"

namespace massey {

enum class Verdict { NotDefined, Vanishes, DoesNotVanish };

std::string to_string(Verdict v);

struct CheckOptions {
  std::uint64_t budget;
  int threads = 1;
  CheckOptions() : budget(default_budget()) {}
};

// Outcome of the n-fold Massey vanishing test for characters chi_1..chi_n:
//   NotDefined     no defining representation exists;
//   Vanishes       some defining representation lifts (lift attached);
//   DoesNotVanish  defining representations exist but none lifts
//                  (one uncleared relator corner attached).
// defining_count is exact for NotDefined and DoesNotVanish; for Vanishes the
// search stops at the first lift.
struct MasseyReport {
  Verdict verdict = Verdict::NotDefined;
  long long p = 2;
  int d = 1;
  int n = 3;
  std::vector<Character> chars;
  std::uint64_t defining_count = 0;
  std::optional<FullAssignment> lift;
  std::optional<CornerObstruction> obstruction;
};

MasseyReport massey_check(const PresentationSpec& spec, const std::vector<Character>& chars,
                          const CheckOptions& opts = CheckOptions());

// Value of the central corner pairing for the given defining representation
// and relator: the negative of the corner of the relator image under the
// zero-corner lift of rep.
int trace_of_value(const PresentationSpec& spec, const BarAssignment& rep,
                   std::size_t relator_index);

// Contribution of relator r to the cup-product pairing of the dual-basis
// characters chi_i and chi_j, read from the relator's normal form: the pair
// coefficient u_ij (symmetric; sign chosen as +b_ij for i < j), the power
// coefficient a_i when i = j and p = 2, and 0 when i = j and p > 2.
int cup_trace(const PresentationSpec& spec, std::size_t relator_index, int i, int j);

enum class ObPattern { Ob1, Ob2a, Ob2b };

std::string to_string(ObPattern pattern);

// A normal-form coefficient pattern in one relator that forces a specific
// triple Massey product over the dual basis to be defined and nonvanishing.
// When p = 2 this obstructs realizability: the group cannot be the maximal
// pro-2 quotient of an absolute Galois group, and not_realizable is set.
struct ObstructionWitness {
  std::size_t relator_index = 0;
  ObPattern pattern = ObPattern::Ob1;
  int i = 0;
  int j = 0;
  int k = 0;  // only used by Ob1
  std::vector<Character> implied_triple;
  bool not_realizable = false;
};

// Scans every relator's normal form for obstruction patterns. Every emitted
// witness is cross-checked by running massey_check on its implied triple; a
// witness whose triple fails to return DoesNotVanish signals an internal bug
// and raises Error.
std::vector<ObstructionWitness> obstruction_scan(const PresentationSpec& spec,
                                                 const CheckOptions& opts = CheckOptions());

}  // namespace massey
