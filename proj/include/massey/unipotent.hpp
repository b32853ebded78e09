#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "massey/character.hpp"
#include "massey/words.hpp"

namespace massey {

// Upper unitriangular (n+1)x(n+1) matrix over F_p. Indices are 1-based.
class UnipotentMatrix {
 public:
  UnipotentMatrix(long long p, int n);  // identity

  long long modulus() const { return p_; }
  // Fold size n; the matrix itself is (n+1)x(n+1).
  int fold() const { return n_; }
  int size() const { return n_ + 1; }

  int at(int i, int j) const;
  // Sets a strictly-upper entry (i < j).
  void set(int i, int j, int v);
  int corner() const { return at(1, n_ + 1); }

  bool is_identity() const;
  // True when the matrix agrees with the identity everywhere except
  // possibly the (1, n+1) corner.
  bool is_identity_off_corner() const;

  UnipotentMatrix operator*(const UnipotentMatrix& other) const;
  UnipotentMatrix inverse() const;
  bool operator==(const UnipotentMatrix&) const = default;

  const std::vector<int>& entries() const { return e_; }

 private:
  long long p_;
  int n_;
  std::vector<int> e_;  // row-major (n+1)^2

  int flat(int i, int j) const { return (i - 1) * (n_ + 1) + (j - 1); }
  void check_index(int i, int j) const;
};

UnipotentMatrix mat_power(const UnipotentMatrix& m, long long e);
// Group commutator x^-1 y^-1 x y.
UnipotentMatrix mat_commutator(const UnipotentMatrix& x, const UnipotentMatrix& y);

// Image of a unipotent matrix in the quotient by the center: the (1, n+1)
// entry is masked (stored as zero and ignored by every operation).
class BarUnipotent {
 public:
  BarUnipotent(long long p, int n);  // identity
  explicit BarUnipotent(UnipotentMatrix m);

  long long modulus() const { return m_.modulus(); }
  int fold() const { return m_.fold(); }
  // Representative with zero corner.
  const UnipotentMatrix& matrix() const { return m_; }

  int at(int i, int j) const;
  void set(int i, int j, int v);
  bool is_identity() const { return m_.is_identity(); }

  BarUnipotent operator*(const BarUnipotent& other) const;
  BarUnipotent inverse() const;
  bool operator==(const BarUnipotent&) const = default;

 private:
  UnipotentMatrix m_;
};

// Assignment of one matrix per generator x1..xd.
using FullAssignment = std::vector<UnipotentMatrix>;
using BarAssignment = std::vector<BarUnipotent>;

UnipotentMatrix evaluate_word(const FullAssignment& images, const FreeWord& w);
BarUnipotent evaluate_word(const BarAssignment& images, const FreeWord& w);

// Strictly-upper positions of an (n+1)x(n+1) matrix that are neither on the
// superdiagonal nor the (1, n+1) corner: the free entries of a prescribed
// masked assignment.
std::vector<std::pair<int, int>> bar_free_entries(int n);

std::uint64_t default_budget();

struct EnumOptions {
  // Cap on the total assignment space p^(free entries * d).
  std::uint64_t budget;
  int threads = 1;
  EnumOptions() : budget(default_budget()) {}
};

// Worker slice of an enumeration stream: worker `index` out of `of` owns a
// disjoint portion of the space.
struct Partition {
  int index = 0;
  int of = 1;
};

// Streams every masked assignment whose superdiagonal is prescribed by
// -chars: the image of x_g has (i, i+1) entry equal to -chars[i-1](g).
// Assignments are streamed as zero-corner full matrices. The visitor returns
// false to stop early. Throws FoldTooLarge when the space exceeds the budget.
void for_each_prescribed_assignment(long long p, int d, const std::vector<Character>& chars,
                                    std::uint64_t budget, const Partition& part,
                                    const std::function<bool(const FullAssignment&)>& visit);

// Streams the defining representations: prescribed masked assignments that
// kill every relator modulo the masked corner.
void for_each_defining_rep(const PresentationSpec& spec, const std::vector<Character>& chars,
                           const EnumOptions& opts,
                           const std::function<bool(const BarAssignment&)>& visit);
void for_each_defining_rep(const PresentationSpec& spec, const std::vector<Character>& chars,
                           const EnumOptions& opts, const Partition& part,
                           const std::function<bool(const BarAssignment&)>& visit);

std::vector<BarAssignment> enumerate_defining_reps(const PresentationSpec& spec,
                                                   const std::vector<Character>& chars,
                                                   const EnumOptions& opts = EnumOptions());

struct CornerObstruction {
  std::size_t relator_index;
  int corner;
};

struct LiftCertificate {
  bool exists = false;
  // Zero-corner lift whose relator images are all exactly the identity.
  std::optional<FullAssignment> lift;
  // On failure, a relator whose central corner cannot be cleared.
  std::optional<CornerObstruction> obstruction;
};

// Decides whether a defining representation lifts to the full unipotent
// group. The input must satisfy every relator modulo the mask.
LiftCertificate lift_exists(const PresentationSpec& spec, const BarAssignment& rep);

// Searches all homomorphisms G -> U_{n+1}(F_p) (images of generators range
// over the full group) for one whose value at w is not the identity. Returns
// nullopt when no homomorphism separates w. Throws BudgetExceeded when the
// search space exceeds the budget.
std::optional<FullAssignment> separating_rep(const PresentationSpec& spec, const FreeWord& w,
                                             int n, const EnumOptions& opts = EnumOptions());

// Closure of the given matrices under multiplication.
std::vector<UnipotentMatrix> generated_subgroup(const std::vector<UnipotentMatrix>& gens,
                                                std::size_t limit = 1u << 20);

}  // namespace massey
