#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "massey/errors.hpp"

namespace massey {

// Square class of a nonzero rational integer, stored as its squarefree part
// together with the scale: a = representative() * scale()^2.
class SquareClass {
 public:
  SquareClass() : rep_(1), scale_(1) {}
  explicit SquareClass(const mpz_class& a);
  // gmpxx has no long long constructor; long is 64-bit on every supported
  // platform here.
  explicit SquareClass(long long a) : SquareClass(mpz_class(static_cast<long>(a))) {}

  const mpz_class& representative() const { return rep_; }
  const mpz_class& scale() const { return scale_; }
  bool is_one() const { return rep_ == 1; }

  bool operator==(const SquareClass& other) const { return rep_ == other.rep_; }

 private:
  mpz_class rep_;
  mpz_class scale_;
};

// A place of Q: a finite prime or the real place.
struct Place {
  bool infinite = false;
  mpz_class prime = 0;

  static Place real() { return Place{true, 0}; }
  static Place finite(const mpz_class& p) { return Place{false, p}; }

  std::string str() const { return infinite ? "infinity" : prime.get_str(); }
  bool operator==(const Place&) const = default;
};

// Hilbert symbol (a, b)_v in {+1, -1}.
int hilbert_symbol(const SquareClass& a, const SquareClass& b, const Place& v);

// The real place, 2, and the odd primes dividing a or b: outside these the
// symbol is automatically +1.
std::vector<Place> relevant_places(const SquareClass& a, const SquareClass& b);

// True when chi_a cup chi_b = 0 in H^2(G_Q, Z/2), i.e. (a, b)_v = +1 at
// every place.
bool cup_vanishes(const SquareClass& a, const SquareClass& b);

// Exact rationals with b = a1^2 - a*a2^2 (a, b their squarefree parts).
struct NormRepresentation {
  mpq_class a1, a2;
};

// Writes the squarefree part of b as a norm from Q(sqrt(a)) by a bounded
// search over conic solutions b*z^2 = x^2 - a*y^2. Throws NotANorm when
// cup_vanishes fails; height_cap = 0 picks a bound that covers the
// guaranteed smallest solution.
NormRepresentation norm_solve(const SquareClass& a, const SquareClass& b,
                              unsigned long height_cap = 0);

// Rational point certifying that the triple Massey product vanishes:
// b*x^2 = (y1^2 - a*y2^2 + c*y3^2 - a*c*y4^2)^2 - 4*c*(y1*y3 - a*y2*y4)^2
// with x != 0.
struct SplittingPoint {
  mpq_class x, y1, y2, y3, y4;
};

struct GaloisCertificate {
  // Set when a, b or c is a square, where vanishing needs no point.
  bool trivial = false;
  std::optional<SplittingPoint> point;
  std::optional<NormRepresentation> norm_ab;  // b as a norm from Q(sqrt(a))
  std::optional<NormRepresentation> norm_cb;  // b as a norm from Q(sqrt(c))
  mpq_class lhs = 0;  // b*x^2, for the squarefree triple
  mpq_class rhs = 0;  // quartic side, equal to lhs by construction
};

// Certificate for the squarefree triple. Requires the triple Massey product
// to be defined (both cup products vanish); throws NotDefinedError otherwise.
GaloisCertificate splitting_point(const SquareClass& a, const SquareClass& b,
                                  const SquareClass& c, unsigned long height_cap = 0);

struct GaloisReport {
  mpz_class a = 1, b = 1, c = 1;
  SquareClass class_a, class_b, class_c;
  bool defined = false;
  // When not defined: 0 = (a,b) pair failed, 1 = (b,c), plus the bad place.
  std::optional<std::pair<int, Place>> failure;
  // Certificate for the squarefree triple.
  std::optional<GaloisCertificate> certificate;
  // The certificate point rescaled to satisfy the identity for the inputs
  // exactly as given.
  std::optional<SplittingPoint> point;
  mpq_class lhs = 0, rhs = 0;
};

// Full decision for integer inputs: definedness of <chi_a, chi_b, chi_c>
// over Q and, when defined, a vanishing certificate.
GaloisReport galois_triple_check(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                                 unsigned long height_cap = 0);

mpq_class variety_lhs(const mpz_class& b, const mpq_class& x);
mpq_class variety_rhs(const mpz_class& a, const mpz_class& c, const SplittingPoint& pt);

}  // namespace massey
