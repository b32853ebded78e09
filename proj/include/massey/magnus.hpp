#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "massey/words.hpp"

namespace massey {

// Noncommutative polynomial over F_p in X_1..X_d, truncated past degree 3.
// Coefficients are stored dense: 1 constant, d linear, d^2 quadratic and d^3
// cubic slots, each monomial a word in the X_i.
class TruncatedSeries {
 public:
  TruncatedSeries(long long p, int d);
  static TruncatedSeries one(long long p, int d);

  long long modulus() const { return p_; }
  int var_count() const { return d_; }

  int constant() const { return c_[0]; }
  int deg1(int i) const;
  int deg2(int i, int j) const;
  int deg3(int i, int j, int k) const;
  void set_constant(int v);
  void set_deg1(int i, int v);
  void set_deg2(int i, int j, int v);
  void set_deg3(int i, int j, int k, int v);

  bool is_one() const;
  // Largest n <= 4 with the series congruent to 1 modulo degree n.
  // Requires constant term 1; the return value 4 means "1 + O(deg 4)", i.e.
  // exactly 1 after truncation.
  int one_mod_degree() const;

  // In-place right multiplication by (1 + X_g)^e, expanded via generalized
  // binomials; valid for any integer e including negatives.
  void mul_generator_power(int g, long long e);

  TruncatedSeries operator*(const TruncatedSeries& other) const;
  // Multiplicative inverse; requires constant term 1.
  TruncatedSeries inverse() const;

  bool operator==(const TruncatedSeries&) const = default;

 private:
  long long p_;
  int d_;
  std::vector<int> c_;

  int idx1(int i) const { return 1 + (i - 1); }
  int idx2(int i, int j) const { return 1 + d_ + (i - 1) * d_ + (j - 1); }
  int idx3(int i, int j, int k) const {
    return 1 + d_ + d_ * d_ + ((i - 1) * d_ + (j - 1)) * d_ + (k - 1);
  }
  void check_var(int i) const;
};

// Image of w under x_i -> 1 + X_i, truncated past degree 3, over F_p.
TruncatedSeries magnus_image(const FreeWord& w, long long p);

// Position of w in the Zassenhaus filtration S = S_(1) > S_(2) > ... as far
// as degree-3 truncation can see: 0 for the empty word, n in {1,2,3} when
// w lies in S_(n) but not S_(n+1), and 4 when w lies in S_(4).
int zassenhaus_level(const FreeWord& w, long long p);

// Coefficients of the normal form of a word w in S_(2) modulo S_(4):
//
//   p = 2 :  w = prod_i x_i^{2 a_i} * prod_{i<j} [x_i,x_j]^{b_ij}
//                  * prod_{i<j, k<=j} [[x_i,x_j],x_k]^{c_ijk} * r'
//   p = 3 :  w = prod_{i<j} [x_i,x_j]^{b_ij} * prod_i x_i^{3 a_i}
//                  * prod_{i<j, k<=j} [[x_i,x_j],x_k]^{c_ijk} * r'
//   p >= 5:  w = prod_{i<j} [x_i,x_j]^{b_ij}
//                  * prod_{i<j, k<=j} [[x_i,x_j],x_k]^{c_ijk} * r'
//
// with r' in S_(4); products run in lexicographic index order. Maps hold only
// the nonzero coefficients.
struct CanonicalDecomposition {
  long long p = 2;
  int d = 1;
  std::map<int, int> a;
  std::map<std::pair<int, int>, int> b;
  std::map<std::array<int, 3>, int> c;
  // Magnus image of the residual r'; always 1 after truncation.
  TruncatedSeries residual;

  int a_at(int i) const;
  int b_at(int i, int j) const;  // requires i < j
  int c_at(int i, int j, int k) const;
  // Symmetric pair coefficient: b_ij when i < j, b_ji when j < i.
  int u(int i, int j) const;
};

CanonicalDecomposition canonical_decompose(const FreeWord& w, long long p);

// The explicit product word with the given coefficients, factors ordered as
// in the normal form above.
FreeWord decomposition_word(long long p, int d, const std::map<int, int>& a,
                            const std::map<std::pair<int, int>, int>& b,
                            const std::map<std::array<int, 3>, int>& c);
FreeWord decomposition_word(const CanonicalDecomposition& dec);

}  // namespace massey
