#include "massey/galois_q.hpp"

#include <algorithm>

namespace massey {

namespace {

std::vector<std::pair<mpz_class, int>> factorize(mpz_class n) {
  // n > 0; plain trial division, adequate for desk-scale inputs.
  std::vector<std::pair<mpz_class, int>> out;
  mpz_class q = 2;
  while (q * q <= n) {
    if (n % q == 0) {
      int e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      out.emplace_back(q, e);
    }
    q += (q == 2) ? 1 : 2;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Odd part and 2-adic valuation.
std::pair<mpz_class, unsigned> split_two(const mpz_class& a) {
  mpz_class u = a;
  unsigned v = 0;
  while (mpz_even_p(u.get_mpz_t())) {
    u /= 2;
    ++v;
  }
  return {u, v};
}

int eps_mod2(const mpz_class& odd) {
  // (odd - 1)/2 mod 2
  mpz_class t = (odd - 1) / 2;
  return static_cast<int>(mpz_tstbit(t.get_mpz_t(), 0));
}

int omega_mod2(const mpz_class& odd) {
  // (odd^2 - 1)/8 mod 2
  mpz_class t = (odd * odd - 1) / 8;
  return static_cast<int>(mpz_tstbit(t.get_mpz_t(), 0));
}

int legendre(const mpz_class& a, const mpz_class& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

}  // namespace

SquareClass::SquareClass(const mpz_class& a) {
  if (a == 0) throw Error("square classes are defined for nonzero integers only");
  rep_ = a < 0 ? -1 : 1;
  scale_ = 1;
  for (const auto& [q, e] : factorize(abs(a))) {
    if (e % 2 == 1) rep_ *= q;
    for (int t = 0; t < e / 2; ++t) scale_ *= q;
  }
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b, const Place& v) {
  const mpz_class& A = a.representative();
  const mpz_class& B = b.representative();
  if (v.infinite) {
    return (A < 0 && B < 0) ? -1 : 1;
  }
  if (v.prime == 2) {
    auto [u, alpha] = split_two(abs(A));
    auto [w, beta] = split_two(abs(B));
    if (A < 0) u = -u;
    if (B < 0) w = -w;
    int e = (eps_mod2(u) * eps_mod2(w) + static_cast<int>(alpha) * omega_mod2(w) +
             static_cast<int>(beta) * omega_mod2(u)) %
            2;
    return e ? -1 : 1;
  }
  // odd finite prime
  const mpz_class& q = v.prime;
  unsigned alpha = 0, beta = 0;
  mpz_class u = A, w = B;
  while (u % q == 0) {
    u /= q;
    ++alpha;
  }
  while (w % q == 0) {
    w /= q;
    ++beta;
  }
  int sym = 1;
  if ((alpha * beta) % 2 == 1 && eps_mod2(q) == 1) sym = -sym;
  if (beta % 2 == 1 && legendre(u, q) == -1) sym = -sym;
  if (alpha % 2 == 1 && legendre(w, q) == -1) sym = -sym;
  return sym;
}

std::vector<Place> relevant_places(const SquareClass& a, const SquareClass& b) {
  std::vector<Place> places;
  places.push_back(Place::real());
  places.push_back(Place::finite(2));
  std::vector<mpz_class> odd;
  for (const auto& [q, e] : factorize(abs(a.representative()))) {
    if (q != 2) odd.push_back(q);
  }
  for (const auto& [q, e] : factorize(abs(b.representative()))) {
    if (q != 2) odd.push_back(q);
  }
  std::sort(odd.begin(), odd.end());
  odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
  for (const mpz_class& q : odd) places.push_back(Place::finite(q));
  return places;
}

bool cup_vanishes(const SquareClass& a, const SquareClass& b) {
  for (const Place& v : relevant_places(a, b)) {
    if (hilbert_symbol(a, b, v) == -1) return false;
  }
  return true;
}

NormRepresentation norm_solve(const SquareClass& a, const SquareClass& b,
                              unsigned long height_cap) {
  if (!cup_vanishes(a, b)) {
    throw NotANorm(b.representative().get_str() + " is not a norm from Q(sqrt(" +
                   a.representative().get_str() + "))");
  }
  const mpz_class& A = a.representative();
  const mpz_class& B = b.representative();

  if (A == 1) {
    if (B == 1) return {mpq_class(1), mpq_class(0)};
    // b = ((b+1)/2)^2 - ((b-1)/2)^2
    return {mpq_class(B + 1) / 2, mpq_class(B - 1) / 2};
  }
  if (B == 1) return {mpq_class(1), mpq_class(0)};

  unsigned long cap = height_cap;
  if (cap == 0) {
    // A Holzer-reduced solution of the conic has all coordinates at most
    // sqrt(max(|A|,|B|)); the factor 4 is slack.
    mpz_class m = std::max(abs(A), abs(B));
    mpz_class root = sqrt(m);
    mpz_class c = 4 * (root + 1);
    cap = std::max(64ul, c.get_ui());
  }

  mpz_class t, x;
  auto try_pair = [&](unsigned long y, unsigned long z) -> std::optional<NormRepresentation> {
    // b*z^2 = x^2 - a*y^2 with x >= 0
    t = B * z * z + A * y * y;
    if (t < 0) return std::nullopt;
    if (!mpz_perfect_square_p(t.get_mpz_t())) return std::nullopt;
    x = sqrt(t);
    return NormRepresentation{mpq_class(x) / z, mpq_class(y) / mpq_class(z)};
  };

  for (unsigned long radius = 1; radius <= cap; ++radius) {
    for (unsigned long y = 0; y <= radius; ++y) {
      if (auto found = try_pair(y, radius)) return *found;
    }
    for (unsigned long z = 1; z < radius; ++z) {
      if (auto found = try_pair(radius, z)) return *found;
    }
  }
  throw HeightCapExceeded("no conic solution of height <= " + std::to_string(cap) +
                          " for b = " + B.get_str() + ", a = " + A.get_str());
}

mpq_class variety_lhs(const mpz_class& b, const mpq_class& x) { return b * x * x; }

mpq_class variety_rhs(const mpz_class& a, const mpz_class& c, const SplittingPoint& pt) {
  mpq_class t1 = pt.y1 * pt.y1 - a * pt.y2 * pt.y2 + c * pt.y3 * pt.y3 - a * c * pt.y4 * pt.y4;
  mpq_class t2 = pt.y1 * pt.y3 - a * pt.y2 * pt.y4;
  return t1 * t1 - 4 * c * t2 * t2;
}

GaloisCertificate splitting_point(const SquareClass& a, const SquareClass& b,
                                  const SquareClass& c, unsigned long height_cap) {
  if (!cup_vanishes(a, b)) {
    throw NotDefinedError("chi_a cup chi_b does not vanish; the triple product is undefined");
  }
  if (!cup_vanishes(b, c)) {
    throw NotDefinedError("chi_b cup chi_c does not vanish; the triple product is undefined");
  }

  GaloisCertificate cert;
  if (a.is_one() || b.is_one() || c.is_one()) {
    cert.trivial = true;
    return cert;
  }

  const mpz_class& A = a.representative();
  const mpz_class& C = c.representative();
  SplittingPoint pt;

  if (A == C) {
    // a*c is a square: work on the diagonal variety with c replaced by a.
    NormRepresentation alpha = norm_solve(a, b, height_cap);
    if (alpha.a1 != 0) {
      pt = SplittingPoint{4 * alpha.a1, 2 * alpha.a1, alpha.a2, alpha.a2, mpq_class(0)};
    } else {
      // b = -a*a2^2; the x = 4a point works instead.
      pt = SplittingPoint{mpq_class(4 * A), mpq_class(A), alpha.a2, alpha.a2, mpq_class(-1)};
    }
    cert.norm_ab = alpha;
  } else {
    NormRepresentation alpha = norm_solve(a, b, height_cap);
    NormRepresentation gamma = norm_solve(c, b, height_cap);
    if (alpha.a1 + gamma.a1 == 0) {
      throw Error("internal: degenerate norm pair in the splitting construction");
    }
    pt = SplittingPoint{2 * (alpha.a1 + gamma.a1), alpha.a1 + gamma.a1, alpha.a2, gamma.a2,
                        mpq_class(0)};
    cert.norm_ab = alpha;
    cert.norm_cb = gamma;
  }

  cert.lhs = variety_lhs(b.representative(), pt.x);
  cert.rhs = variety_rhs(A, C, pt);
  if (cert.lhs != cert.rhs || pt.x == 0) {
    throw Error("internal: splitting point fails the variety identity");
  }
  cert.point = pt;
  return cert;
}

GaloisReport galois_triple_check(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                                 unsigned long height_cap) {
  GaloisReport report;
  report.a = a;
  report.b = b;
  report.c = c;
  report.class_a = SquareClass(a);
  report.class_b = SquareClass(b);
  report.class_c = SquareClass(c);

  for (const Place& v : relevant_places(report.class_a, report.class_b)) {
    if (hilbert_symbol(report.class_a, report.class_b, v) == -1) {
      report.defined = false;
      report.failure = {0, v};
      return report;
    }
  }
  for (const Place& v : relevant_places(report.class_b, report.class_c)) {
    if (hilbert_symbol(report.class_b, report.class_c, v) == -1) {
      report.defined = false;
      report.failure = {1, v};
      return report;
    }
  }
  report.defined = true;

  GaloisCertificate cert = splitting_point(report.class_a, report.class_b, report.class_c,
                                           height_cap);
  if (!cert.trivial) {
    // Rescale the squarefree-triple point to the inputs as given: with
    // a = A*s^2, the substitutions y2 -> y2/s etc. preserve the identity.
    const mpz_class& sa = report.class_a.scale();
    const mpz_class& sb = report.class_b.scale();
    const mpz_class& sc = report.class_c.scale();
    SplittingPoint pt = *cert.point;
    pt.x /= sb;
    pt.y2 /= sa;
    pt.y3 /= sc;
    pt.y4 /= sa * sc;
    report.lhs = variety_lhs(b, pt.x);
    report.rhs = variety_rhs(a, c, pt);
    if (report.lhs != report.rhs || pt.x == 0) {
      throw Error("internal: rescaled point fails the variety identity");
    }
    report.point = pt;
  }
  report.certificate = std::move(cert);
  return report;
}

}  // namespace massey
