#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "massey/errors.hpp"

namespace massey {

// One run of a free-group word: generator index (1-based) and nonzero exponent.
struct Letter {
  int gen = 0;
  long long exp = 0;

  bool operator==(const Letter&) const = default;
};

// Reduced word in the free group on x1..xd, stored run-length encoded.
// Invariants: every exponent is nonzero, adjacent letters use distinct
// generators, and every generator index lies in [1, d].
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(int generator_count);
  FreeWord(int generator_count, const std::vector<Letter>& letters);

  static FreeWord generator(int generator_count, int gen, long long exp = 1);

  int generator_count() const { return d_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t run_count() const { return letters_.size(); }

  // Total letter count, i.e. the sum of |exp| over all runs.
  long long length() const;

  // Appends x_gen^exp, cancelling against the tail.
  void append(int gen, long long exp);
  void append(const FreeWord& other);

  // Parseable text form such as "x1^2*x3^-1"; the empty word prints as "1".
  std::string str() const;

  bool operator==(const FreeWord&) const = default;

 private:
  int d_ = 0;
  std::vector<Letter> letters_;
};

FreeWord word_multiply(const FreeWord& u, const FreeWord& v);
FreeWord word_invert(const FreeWord& u);
FreeWord word_power(const FreeWord& u, long long e);
// Group commutator u^-1 v^-1 u v.
FreeWord word_commutator(const FreeWord& u, const FreeWord& v);
// Sum of exponents of x_gen in u.
long long exponent_sum(const FreeWord& u, int gen);
// Re-embeds u into the free group on new_generator_count generators,
// renaming x_i to x_(i+offset).
FreeWord word_shift(const FreeWord& u, int offset, int new_generator_count);

// Grammar:
//   word := term {'*' term}
//   term := atom ['^' integer]
//   atom := 'x' digits | '1' | '(' word ')' | '[' word ',' word ']'
// Whitespace is ignored. '[u,v]' denotes u^-1 v^-1 u v; '1' is the empty word.
FreeWord parse_word(std::string_view text, int generator_count);

bool is_prime(long long n);

// Finite presentation of a pro-p group: quotient of the free pro-p group on
// x1..xd by relators that all lie in S_(2) (zero exponent sums mod p).
struct PresentationSpec {
  long long p = 2;
  int d = 1;
  std::vector<FreeWord> relators;
};

// Validates and returns the presentation; throws on a non-prime p, d < 1, or
// a relator outside S_(2).
PresentationSpec make_presentation(long long p, int d, std::vector<FreeWord> relators);

// Text format, one key per line, '#' starts a comment:
//   p = 2
//   generators = 5
//   relator = [x4,x5]*[[x2,x3],x1]
PresentationSpec parse_presentation(std::string_view text);
PresentationSpec load_presentation(const std::string& path);

}  // namespace massey
