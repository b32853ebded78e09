#include "massey/magnus.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace massey {

namespace {

long long mod_reduce(__int128 x, long long p) {
  long long r = static_cast<long long>(x % p);
  return r < 0 ? r + p : r;
}

int mod_inverse(int a, long long p) {
  // p is prime and a is nonzero mod p.
  long long t = 0, new_t = 1;
  long long r = p, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<int>(t);
}

}  // namespace

TruncatedSeries::TruncatedSeries(long long p, int d) : p_(p), d_(d) {
  if (p < 2) throw Error("modulus must be at least 2");
  if (d < 0) throw IndexError("variable count must be nonnegative");
  c_.assign(1 + d + static_cast<std::size_t>(d) * d + static_cast<std::size_t>(d) * d * d, 0);
}

TruncatedSeries TruncatedSeries::one(long long p, int d) {
  TruncatedSeries s(p, d);
  s.c_[0] = 1;
  return s;
}

void TruncatedSeries::check_var(int i) const {
  if (i < 1 || i > d_) {
    throw IndexError("variable index " + std::to_string(i) + " out of range [1, " +
                     std::to_string(d_) + "]");
  }
}

int TruncatedSeries::deg1(int i) const {
  check_var(i);
  return c_[idx1(i)];
}

int TruncatedSeries::deg2(int i, int j) const {
  check_var(i);
  check_var(j);
  return c_[idx2(i, j)];
}

int TruncatedSeries::deg3(int i, int j, int k) const {
  check_var(i);
  check_var(j);
  check_var(k);
  return c_[idx3(i, j, k)];
}

void TruncatedSeries::set_constant(int v) { c_[0] = static_cast<int>(mod_reduce(v, p_)); }

void TruncatedSeries::set_deg1(int i, int v) {
  check_var(i);
  c_[idx1(i)] = static_cast<int>(mod_reduce(v, p_));
}

void TruncatedSeries::set_deg2(int i, int j, int v) {
  check_var(i);
  check_var(j);
  c_[idx2(i, j)] = static_cast<int>(mod_reduce(v, p_));
}

void TruncatedSeries::set_deg3(int i, int j, int k, int v) {
  check_var(i);
  check_var(j);
  check_var(k);
  c_[idx3(i, j, k)] = static_cast<int>(mod_reduce(v, p_));
}

bool TruncatedSeries::is_one() const {
  if (c_[0] != 1) return false;
  for (std::size_t t = 1; t < c_.size(); ++t) {
    if (c_[t] != 0) return false;
  }
  return true;
}

int TruncatedSeries::one_mod_degree() const {
  if (c_[0] != 1) throw Error("series is not a 1-unit");
  std::size_t off1 = 1;
  std::size_t off2 = off1 + d_;
  std::size_t off3 = off2 + static_cast<std::size_t>(d_) * d_;
  for (std::size_t t = off1; t < off2; ++t) {
    if (c_[t] != 0) return 1;
  }
  for (std::size_t t = off2; t < off3; ++t) {
    if (c_[t] != 0) return 2;
  }
  for (std::size_t t = off3; t < c_.size(); ++t) {
    if (c_[t] != 0) return 3;
  }
  return 4;
}

void TruncatedSeries::mul_generator_power(int g, long long e) {
  check_var(g);
  if (e == 0) return;
  if (e > 1000000000000LL || e < -1000000000000LL) {
    throw Error("exponent magnitude too large");
  }
  __int128 E = e;
  int b1 = static_cast<int>(mod_reduce(E, p_));
  int b2 = static_cast<int>(mod_reduce(E * (E - 1) / 2, p_));
  int b3 = static_cast<int>(mod_reduce(E * (E - 1) * (E - 2) / 6, p_));

  const int d = d_;
  const int f = g - 1;
  const long long p = p_;
  int* c = c_.data();
  const int off1 = 1;
  const int off2 = off1 + d;
  const int off3 = off2 + d * d;

  // Appending X_g^k to a monomial multiplies its flat index by d^k and adds
  // f * (d^(k-1) + ... + 1); degrees are updated from high to low so every
  // read sees the pre-multiplication value.
  for (int m = 0; m < d * d; ++m) {
    if (c[off2 + m]) {
      int& t = c[off3 + m * d + f];
      t = static_cast<int>((t + static_cast<long long>(b1) * c[off2 + m]) % p);
    }
  }
  for (int m = 0; m < d; ++m) {
    if (c[off1 + m]) {
      int& t = c[off3 + (m * d + f) * d + f];
      t = static_cast<int>((t + static_cast<long long>(b2) * c[off1 + m]) % p);
    }
  }
  if (c[0]) {
    int& t = c[off3 + ((f * d + f) * d + f)];
    t = static_cast<int>((t + static_cast<long long>(b3) * c[0]) % p);
  }
  for (int m = 0; m < d; ++m) {
    if (c[off1 + m]) {
      int& t = c[off2 + m * d + f];
      t = static_cast<int>((t + static_cast<long long>(b1) * c[off1 + m]) % p);
    }
  }
  if (c[0]) {
    int& t = c[off2 + f * d + f];
    t = static_cast<int>((t + static_cast<long long>(b2) * c[0]) % p);
  }
  if (c[0]) {
    int& t = c[off1 + f];
    t = static_cast<int>((t + static_cast<long long>(b1) * c[0]) % p);
  }
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& other) const {
  if (p_ != other.p_ || d_ != other.d_) {
    throw DimensionMismatch("series dimensions do not match");
  }
  const int d = d_;
  const long long p = p_;
  TruncatedSeries out(p, d);
  const int* a = c_.data();
  const int* b = other.c_.data();
  int* r = out.c_.data();
  const int off1 = 1;
  const int off2 = off1 + d;
  const int off3 = off2 + d * d;
  auto acc = [p](int& slot, long long v) { slot = static_cast<int>((slot + v) % p); };

  acc(r[0], static_cast<long long>(a[0]) * b[0]);
  for (int m = 0; m < d; ++m) {
    acc(r[off1 + m], static_cast<long long>(a[0]) * b[off1 + m]);
    acc(r[off1 + m], static_cast<long long>(a[off1 + m]) * b[0]);
  }
  for (int m = 0; m < d * d; ++m) {
    acc(r[off2 + m], static_cast<long long>(a[0]) * b[off2 + m]);
    acc(r[off2 + m], static_cast<long long>(a[off2 + m]) * b[0]);
  }
  for (int m1 = 0; m1 < d; ++m1) {
    if (!a[off1 + m1]) continue;
    for (int m2 = 0; m2 < d; ++m2) {
      acc(r[off2 + m1 * d + m2], static_cast<long long>(a[off1 + m1]) * b[off1 + m2]);
    }
  }
  for (int m = 0; m < d * d * d; ++m) {
    acc(r[off3 + m], static_cast<long long>(a[0]) * b[off3 + m]);
    acc(r[off3 + m], static_cast<long long>(a[off3 + m]) * b[0]);
  }
  for (int m1 = 0; m1 < d; ++m1) {
    if (!a[off1 + m1]) continue;
    for (int m2 = 0; m2 < d * d; ++m2) {
      acc(r[off3 + m1 * d * d + m2], static_cast<long long>(a[off1 + m1]) * b[off2 + m2]);
    }
  }
  for (int m1 = 0; m1 < d * d; ++m1) {
    if (!a[off2 + m1]) continue;
    for (int m2 = 0; m2 < d; ++m2) {
      acc(r[off3 + m1 * d + m2], static_cast<long long>(a[off2 + m1]) * b[off1 + m2]);
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (c_[0] != 1) throw Error("series is not a 1-unit");
  TruncatedSeries u = *this;
  u.c_[0] = 0;
  TruncatedSeries u2 = u * u;
  TruncatedSeries u3 = u2 * u;
  TruncatedSeries out(p_, d_);
  out.c_[0] = 1;
  for (std::size_t t = 1; t < c_.size(); ++t) {
    long long v = static_cast<long long>(p_) * 2 - u.c_[t] + u2.c_[t] - u3.c_[t];
    out.c_[t] = static_cast<int>(v % p_);
  }
  return out;
}

TruncatedSeries magnus_image(const FreeWord& w, long long p) {
  if (!is_prime(p)) throw Error("p must be prime, got " + std::to_string(p));
  TruncatedSeries s = TruncatedSeries::one(p, w.generator_count());
  for (const Letter& l : w.letters()) s.mul_generator_power(l.gen, l.exp);
  return s;
}

int zassenhaus_level(const FreeWord& w, long long p) {
  if (w.empty()) return 0;
  return magnus_image(w, p).one_mod_degree();
}

int CanonicalDecomposition::a_at(int i) const {
  if (i < 1 || i > d) throw IndexError("index out of range");
  auto it = a.find(i);
  return it == a.end() ? 0 : it->second;
}

int CanonicalDecomposition::b_at(int i, int j) const {
  if (i < 1 || j > d || i >= j) throw IndexError("b coefficients require 1 <= i < j <= d");
  auto it = b.find({i, j});
  return it == b.end() ? 0 : it->second;
}

int CanonicalDecomposition::c_at(int i, int j, int k) const {
  if (i < 1 || j > d || i >= j || k < 1 || k > j) {
    throw IndexError("c coefficients require 1 <= i < j <= d and 1 <= k <= j");
  }
  auto it = c.find({i, j, k});
  return it == c.end() ? 0 : it->second;
}

int CanonicalDecomposition::u(int i, int j) const {
  if (i == j) throw IndexError("pair coefficient u requires distinct indices");
  return i < j ? b_at(i, j) : b_at(j, i);
}

FreeWord decomposition_word(long long p, int d, const std::map<int, int>& a,
                            const std::map<std::pair<int, int>, int>& b,
                            const std::map<std::array<int, 3>, int>& c) {
  FreeWord out(d);
  auto append_powers = [&] {
    for (const auto& [i, ai] : a) {
      if (i < 1 || i > d) throw IndexError("power index out of range");
      if (ai % p == 0) continue;
      out.append(i, p * static_cast<long long>(ai));
    }
  };
  auto append_pairs = [&] {
    for (const auto& [ij, bij] : b) {
      auto [i, j] = ij;
      if (i < 1 || j > d || i >= j) throw IndexError("pair index out of range");
      if (bij % p == 0) continue;
      out.append(word_power(
          word_commutator(FreeWord::generator(d, i), FreeWord::generator(d, j)), bij));
    }
  };
  auto append_triples = [&] {
    for (const auto& [ijk, cijk] : c) {
      auto [i, j, k] = ijk;
      if (i < 1 || j > d || i >= j || k < 1 || k > j) throw IndexError("triple index out of range");
      if (cijk % p == 0) continue;
      out.append(word_power(
          word_commutator(
              word_commutator(FreeWord::generator(d, i), FreeWord::generator(d, j)),
              FreeWord::generator(d, k)),
          cijk));
    }
  };

  if (p == 2) {
    append_powers();
    append_pairs();
    append_triples();
  } else if (p == 3) {
    append_pairs();
    append_powers();
    append_triples();
  } else {
    if (!a.empty()) throw Error("power coefficients are only defined for p in {2, 3}");
    append_pairs();
    append_triples();
  }
  return out;
}

FreeWord decomposition_word(const CanonicalDecomposition& dec) {
  return decomposition_word(dec.p, dec.d, dec.a, dec.b, dec.c);
}

namespace {

struct RowOp {
  enum Kind { kSwap, kAddMul, kScale };
  Kind kind;
  int i;
  int j;
  int f;
};

// Reduced row echelon data for the degree-3 coefficient solve over F_p:
// columns are the degree-3 Magnus coefficients of the normal-form factors
// [[x_i,x_j],x_k] (i<j, k<=j, lexicographic) followed by x_i^3 when p = 3.
struct Degree3Basis {
  long long p;
  int d;
  int rows;
  int cols;
  std::vector<RowOp> ops;

  std::optional<std::vector<int>> solve(std::vector<int> rhs) const;
};

std::vector<FreeWord> basis_factors(long long p, int d) {
  std::vector<FreeWord> factors;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      for (int k = 1; k <= j; ++k) {
        factors.push_back(word_commutator(
            word_commutator(FreeWord::generator(d, i), FreeWord::generator(d, j)),
            FreeWord::generator(d, k)));
      }
    }
  }
  if (p == 3) {
    for (int i = 1; i <= d; ++i) factors.push_back(word_power(FreeWord::generator(d, i), 3));
  }
  return factors;
}

Degree3Basis build_degree3_basis(long long p, int d) {
  std::vector<FreeWord> factors = basis_factors(p, d);
  const int rows = d * d * d;
  const int cols = static_cast<int>(factors.size());

  std::vector<std::vector<int>> m(rows, std::vector<int>(cols, 0));
  for (int col = 0; col < cols; ++col) {
    TruncatedSeries img = magnus_image(factors[col], p);
    int r = 0;
    for (int i = 1; i <= d; ++i) {
      for (int j = 1; j <= d; ++j) {
        for (int k = 1; k <= d; ++k) m[r++][col] = img.deg3(i, j, k);
      }
    }
  }

  Degree3Basis basis{p, d, rows, cols, {}};
  for (int col = 0; col < cols; ++col) {
    int pivot = -1;
    for (int r = col; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw InternalBasisError("degree-3 factor images are not independent");
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      basis.ops.push_back({RowOp::kSwap, col, pivot, 0});
    }
    if (m[col][col] != 1) {
      int inv = mod_inverse(m[col][col], p);
      for (int t = 0; t < cols; ++t) {
        m[col][t] = static_cast<int>((static_cast<long long>(m[col][t]) * inv) % p);
      }
      basis.ops.push_back({RowOp::kScale, col, 0, inv});
    }
    for (int r = 0; r < rows; ++r) {
      if (r == col || m[r][col] == 0) continue;
      int f = static_cast<int>(p - m[r][col]);
      for (int t = 0; t < cols; ++t) {
        m[r][t] = static_cast<int>((m[r][t] + static_cast<long long>(f) * m[col][t]) % p);
      }
      basis.ops.push_back({RowOp::kAddMul, r, col, f});
    }
  }
  return basis;
}

std::optional<std::vector<int>> Degree3Basis::solve(std::vector<int> rhs) const {
  for (const RowOp& op : ops) {
    switch (op.kind) {
      case RowOp::kSwap:
        std::swap(rhs[op.i], rhs[op.j]);
        break;
      case RowOp::kScale:
        rhs[op.i] = static_cast<int>((static_cast<long long>(rhs[op.i]) * op.f) % p);
        break;
      case RowOp::kAddMul:
        rhs[op.i] = static_cast<int>((rhs[op.i] + static_cast<long long>(op.f) * rhs[op.j]) % p);
        break;
    }
  }
  for (int r = cols; r < rows; ++r) {
    if (rhs[r] != 0) return std::nullopt;
  }
  rhs.resize(cols);
  return rhs;
}

const Degree3Basis& degree3_basis(long long p, int d) {
  static std::mutex mu;
  static std::map<std::pair<long long, int>, std::unique_ptr<Degree3Basis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, d);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Degree3Basis>(build_degree3_basis(p, d))).first;
  }
  return *it->second;
}

}  // namespace

CanonicalDecomposition canonical_decompose(const FreeWord& w, long long p) {
  if (!is_prime(p)) throw Error("p must be prime, got " + std::to_string(p));
  const int d = w.generator_count();
  TruncatedSeries img = magnus_image(w, p);

  for (int i = 1; i <= d; ++i) {
    if (img.deg1(i) != 0) {
      throw NotInS2("word " + w.str() + " is not in S_(2): x" + std::to_string(i) +
                    " has exponent sum not divisible by " + std::to_string(p));
    }
  }

  std::map<int, int> a;
  std::map<std::pair<int, int>, int> b;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      int bij = img.deg2(i, j);
      if ((bij + img.deg2(j, i)) % p != 0) {
        throw InternalBasisError("degree-2 part of an S_(2) word is not antisymmetric");
      }
      if (bij != 0) b[{i, j}] = bij;
    }
    int diag = img.deg2(i, i);
    if (p == 2) {
      if (diag != 0) a[i] = diag;
    } else if (diag != 0) {
      throw InternalBasisError("nonzero diagonal degree-2 coefficient for odd p");
    }
  }

  // Divide off the factors with nonzero degree-2 image; what remains lies in
  // S_(3) and is solved against the degree-3 factor basis. For p = 3 the
  // cubes carry no degree-2 part, so they are solved here too.
  std::map<int, int> a2_prefix = (p == 2) ? a : std::map<int, int>{};
  FreeWord prefix = decomposition_word(p, d, a2_prefix, b, {});
  TruncatedSeries rest = magnus_image(prefix, p).inverse() * img;
  if (rest.one_mod_degree() < 3) {
    throw InternalBasisError("degree-2 part did not cancel");
  }

  std::vector<int> rhs;
  rhs.reserve(static_cast<std::size_t>(d) * d * d);
  for (int i = 1; i <= d; ++i) {
    for (int j = 1; j <= d; ++j) {
      for (int k = 1; k <= d; ++k) rhs.push_back(rest.deg3(i, j, k));
    }
  }
  const Degree3Basis& basis = degree3_basis(p, d);
  auto solution = basis.solve(std::move(rhs));
  if (!solution) {
    throw InternalBasisError("degree-3 part is outside the factor basis span");
  }

  std::map<std::array<int, 3>, int> c;
  int col = 0;
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      for (int k = 1; k <= j; ++k) {
        int v = (*solution)[col++];
        if (v != 0) c[{i, j, k}] = v;
      }
    }
  }
  if (p == 3) {
    for (int i = 1; i <= d; ++i) {
      int v = (*solution)[col++];
      if (v != 0) a[i] = v;
    }
  }

  FreeWord full = decomposition_word(p, d, a, b, c);
  TruncatedSeries residual = magnus_image(full, p).inverse() * img;
  if (!residual.is_one()) {
    throw InternalBasisError("normal-form residual is not in S_(4)");
  }
  return CanonicalDecomposition{p, d, std::move(a), std::move(b), std::move(c),
                                std::move(residual)};
}

}  // namespace massey
