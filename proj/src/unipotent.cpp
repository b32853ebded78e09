#include "massey/unipotent.hpp"

#include <cstdlib>
#include <set>
#include <string>

namespace massey {

Character dual_character(int d, int gen) {
  if (gen < 1 || gen > d) throw IndexError("character index out of range");
  Character chi;
  chi.values.assign(d, 0);
  chi.values[gen - 1] = 1;
  return chi;
}

Character negate_character(const Character& chi, long long p) {
  Character out = chi;
  for (int& v : out.values) v = static_cast<int>(((-static_cast<long long>(v)) % p + p) % p);
  return out;
}

Character reduce_character(const Character& chi, long long p) {
  Character out = chi;
  for (int& v : out.values) v = static_cast<int>((static_cast<long long>(v) % p + p) % p);
  return out;
}

UnipotentMatrix::UnipotentMatrix(long long p, int n) : p_(p), n_(n) {
  if (p < 2) throw Error("modulus must be at least 2");
  if (n < 1) throw IndexError("fold size must be at least 1");
  e_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (int i = 1; i <= n + 1; ++i) e_[flat(i, i)] = 1;
}

void UnipotentMatrix::check_index(int i, int j) const {
  if (i < 1 || i > n_ + 1 || j < 1 || j > n_ + 1) {
    throw IndexError("matrix index out of range");
  }
}

int UnipotentMatrix::at(int i, int j) const {
  check_index(i, j);
  return e_[flat(i, j)];
}

void UnipotentMatrix::set(int i, int j, int v) {
  check_index(i, j);
  if (i >= j) throw IndexError("only strictly upper entries may be set");
  e_[flat(i, j)] = static_cast<int>((static_cast<long long>(v) % p_ + p_) % p_);
}

bool UnipotentMatrix::is_identity() const {
  const int m = n_ + 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      if (e_[flat(i, j)] != 0) return false;
    }
  }
  return true;
}

bool UnipotentMatrix::is_identity_off_corner() const {
  const int m = n_ + 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      if (i == 1 && j == m) continue;
      if (e_[flat(i, j)] != 0) return false;
    }
  }
  return true;
}

UnipotentMatrix UnipotentMatrix::operator*(const UnipotentMatrix& other) const {
  if (p_ != other.p_ || n_ != other.n_) {
    throw DimensionMismatch("matrix dimensions do not match");
  }
  const int m = n_ + 1;
  UnipotentMatrix out(p_, n_);
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      long long s = 0;
      for (int k = i; k <= j; ++k) {
        s += static_cast<long long>(e_[flat(i, k)]) * other.e_[other.flat(k, j)];
      }
      out.e_[out.flat(i, j)] = static_cast<int>(s % p_);
    }
  }
  return out;
}

UnipotentMatrix UnipotentMatrix::inverse() const {
  const int m = n_ + 1;
  UnipotentMatrix out(p_, n_);
  // Back-substitution along increasing band width.
  for (int w = 1; w <= m - 1; ++w) {
    for (int i = 1; i + w <= m; ++i) {
      const int j = i + w;
      long long s = 0;
      for (int k = i + 1; k <= j; ++k) {
        s += static_cast<long long>(e_[flat(i, k)]) * out.e_[out.flat(k, j)];
      }
      out.e_[out.flat(i, j)] = static_cast<int>(((-s) % p_ + p_) % p_);
    }
  }
  return out;
}

UnipotentMatrix mat_power(const UnipotentMatrix& m, long long e) {
  UnipotentMatrix base = e < 0 ? m.inverse() : m;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                               : static_cast<unsigned long long>(e);
  UnipotentMatrix acc(m.modulus(), m.fold());
  while (k) {
    if (k & 1ull) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

UnipotentMatrix mat_commutator(const UnipotentMatrix& x, const UnipotentMatrix& y) {
  return x.inverse() * y.inverse() * x * y;
}

BarUnipotent::BarUnipotent(long long p, int n) : m_(p, n) {}

BarUnipotent::BarUnipotent(UnipotentMatrix m) : m_(std::move(m)) {
  m_.set(1, m_.size(), 0);
}

int BarUnipotent::at(int i, int j) const {
  if (i == 1 && j == m_.size()) throw IndexError("the corner entry is masked");
  return m_.at(i, j);
}

void BarUnipotent::set(int i, int j, int v) {
  if (i == 1 && j == m_.size()) throw IndexError("the corner entry is masked");
  m_.set(i, j, v);
}

BarUnipotent BarUnipotent::operator*(const BarUnipotent& other) const {
  return BarUnipotent(m_ * other.m_);
}

BarUnipotent BarUnipotent::inverse() const { return BarUnipotent(m_.inverse()); }

namespace {

template <typename Mat>
Mat evaluate_word_impl(const std::vector<Mat>& images, const FreeWord& w, const Mat& identity) {
  Mat acc = identity;
  for (const Letter& l : w.letters()) {
    if (l.gen < 1 || static_cast<std::size_t>(l.gen) > images.size()) {
      throw IndexError("word uses generator x" + std::to_string(l.gen) +
                       " but the assignment has " + std::to_string(images.size()) + " images");
    }
    const Mat& base = images[l.gen - 1];
    if (l.exp == 1) {
      acc = acc * base;
    } else if (l.exp == -1) {
      acc = acc * base.inverse();
    } else {
      Mat b = l.exp < 0 ? base.inverse() : base;
      unsigned long long k = l.exp < 0 ? static_cast<unsigned long long>(-(l.exp + 1)) + 1ull
                                       : static_cast<unsigned long long>(l.exp);
      while (k) {
        if (k & 1ull) acc = acc * b;
        k >>= 1;
        if (k) b = b * b;
      }
    }
  }
  return acc;
}

}  // namespace

UnipotentMatrix evaluate_word(const FullAssignment& images, const FreeWord& w) {
  if (images.empty()) throw Error("empty assignment");
  return evaluate_word_impl(images, w, UnipotentMatrix(images[0].modulus(), images[0].fold()));
}

BarUnipotent evaluate_word(const BarAssignment& images, const FreeWord& w) {
  if (images.empty()) throw Error("empty assignment");
  return evaluate_word_impl(images, w, BarUnipotent(images[0].modulus(), images[0].fold()));
}

std::vector<std::pair<int, int>> bar_free_entries(int n) {
  if (n < 2) throw IndexError("fold size must be at least 2");
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 2; j <= n + 1; ++j) {
      if (i == 1 && j == n + 1) continue;
      out.emplace_back(i, j);
    }
  }
  return out;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MASSEY_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 8000000ull;
}

namespace {

// Number of base-p digit slots and the guarded total p^slots.
std::uint64_t checked_power(long long p, std::uint64_t slots, std::uint64_t budget,
                            bool fold_error) {
  std::uint64_t total = 1;
  for (std::uint64_t t = 0; t < slots; ++t) {
    if (total > budget / static_cast<std::uint64_t>(p)) {
      std::string msg = "search space exceeds budget of " + std::to_string(budget) +
                        " assignments; raise the budget to proceed";
      if (fold_error) throw FoldTooLarge(msg);
      throw BudgetExceeded(msg);
    }
    total *= static_cast<std::uint64_t>(p);
  }
  return total;
}

}  // namespace

void for_each_prescribed_assignment(long long p, int d, const std::vector<Character>& chars,
                                    std::uint64_t budget, const Partition& part,
                                    const std::function<bool(const FullAssignment&)>& visit) {
  if (!is_prime(p)) throw Error("p must be prime");
  if (d < 1) throw Error("generator count must be at least 1");
  const int n = static_cast<int>(chars.size());
  if (n < 2) throw Error("at least two characters are required");
  std::vector<Character> red;
  red.reserve(chars.size());
  for (const Character& chi : chars) {
    if (chi.d() != d) {
      throw DimensionMismatch("character length does not match the generator count");
    }
    red.push_back(reduce_character(chi, p));
  }
  if (part.of < 1 || part.index < 0 || part.index >= part.of) {
    throw Error("invalid partition");
  }

  const std::vector<std::pair<int, int>> free = bar_free_entries(n);
  const std::uint64_t total =
      checked_power(p, free.size() * static_cast<std::uint64_t>(d), budget, true);

  FullAssignment images;
  images.reserve(d);
  for (int g = 1; g <= d; ++g) {
    UnipotentMatrix m(p, n);
    for (int i = 1; i <= n; ++i) m.set(i, i + 1, static_cast<int>((p - red[i - 1](g)) % p));
    images.push_back(std::move(m));
  }

  const std::uint64_t lo = total / part.of * part.index + std::min<std::uint64_t>(total % part.of, part.index);
  const std::uint64_t hi = lo + total / part.of + (static_cast<std::uint64_t>(part.index) < total % part.of ? 1 : 0);

  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    std::uint64_t u = idx;
    for (int g = 0; g < d; ++g) {
      for (const auto& [i, j] : free) {
        images[g].set(i, j, static_cast<int>(u % p));
        u /= p;
      }
    }
    if (!visit(images)) return;
  }
}

void for_each_defining_rep(const PresentationSpec& spec, const std::vector<Character>& chars,
                           const EnumOptions& opts, const Partition& part,
                           const std::function<bool(const BarAssignment&)>& visit) {
  for_each_prescribed_assignment(
      spec.p, spec.d, chars, opts.budget, part, [&](const FullAssignment& images) {
        for (const FreeWord& r : spec.relators) {
          if (!evaluate_word(images, r).is_identity_off_corner()) return true;
        }
        BarAssignment bar;
        bar.reserve(images.size());
        for (const UnipotentMatrix& m : images) bar.push_back(BarUnipotent(m));
        return visit(bar);
      });
}

void for_each_defining_rep(const PresentationSpec& spec, const std::vector<Character>& chars,
                           const EnumOptions& opts,
                           const std::function<bool(const BarAssignment&)>& visit) {
  for_each_defining_rep(spec, chars, opts, Partition{}, visit);
}

std::vector<BarAssignment> enumerate_defining_reps(const PresentationSpec& spec,
                                                   const std::vector<Character>& chars,
                                                   const EnumOptions& opts) {
  std::vector<BarAssignment> out;
  for_each_defining_rep(spec, chars, opts, [&](const BarAssignment& rep) {
    out.push_back(rep);
    return true;
  });
  return out;
}

LiftCertificate lift_exists(const PresentationSpec& spec, const BarAssignment& rep) {
  if (static_cast<int>(rep.size()) != spec.d) {
    throw DimensionMismatch("assignment size does not match the generator count");
  }
  FullAssignment images;
  images.reserve(rep.size());
  for (const BarUnipotent& b : rep) {
    if (b.modulus() != spec.p) throw DimensionMismatch("assignment modulus does not match p");
    images.push_back(b.matrix());
  }

  LiftCertificate cert;
  for (std::size_t r = 0; r < spec.relators.size(); ++r) {
    UnipotentMatrix value = evaluate_word(images, spec.relators[r]);
    if (!value.is_identity_off_corner()) {
      throw Error("representation does not satisfy relator " + std::to_string(r + 1) +
                  " modulo the center");
    }
    if (value.corner() != 0 && !cert.obstruction) {
      cert.obstruction = CornerObstruction{r, value.corner()};
    }
  }
  if (!cert.obstruction) {
    cert.exists = true;
    cert.lift = std::move(images);
  }
  return cert;
}

std::optional<FullAssignment> separating_rep(const PresentationSpec& spec, const FreeWord& w,
                                             int n, const EnumOptions& opts) {
  if (w.generator_count() != spec.d) {
    throw DimensionMismatch("word generator count does not match the presentation");
  }
  if (n < 1) throw Error("fold size must be at least 1");
  const long long p = spec.p;
  const int d = spec.d;

  std::vector<std::pair<int, int>> upper;
  for (int i = 1; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) upper.emplace_back(i, j);
  }
  const std::uint64_t total =
      checked_power(p, upper.size() * static_cast<std::uint64_t>(d), opts.budget, false);

  FullAssignment images(d, UnipotentMatrix(p, n));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t u = idx;
    for (int g = 0; g < d; ++g) {
      for (const auto& [i, j] : upper) {
        images[g].set(i, j, static_cast<int>(u % p));
        u /= p;
      }
    }
    bool hom = true;
    for (const FreeWord& r : spec.relators) {
      if (!evaluate_word(images, r).is_identity()) {
        hom = false;
        break;
      }
    }
    if (hom && !evaluate_word(images, w).is_identity()) return images;
  }
  return std::nullopt;
}

std::vector<UnipotentMatrix> generated_subgroup(const std::vector<UnipotentMatrix>& gens,
                                                std::size_t limit) {
  if (gens.empty()) return {};
  std::set<std::vector<int>> seen;
  std::vector<UnipotentMatrix> elements;
  std::vector<UnipotentMatrix> frontier;

  UnipotentMatrix id(gens[0].modulus(), gens[0].fold());
  seen.insert(id.entries());
  elements.push_back(id);
  frontier.push_back(id);

  while (!frontier.empty()) {
    std::vector<UnipotentMatrix> next;
    for (const UnipotentMatrix& m : frontier) {
      for (const UnipotentMatrix& g : gens) {
        UnipotentMatrix prod = m * g;
        if (seen.insert(prod.entries()).second) {
          if (elements.size() >= limit) throw BudgetExceeded("subgroup closure exceeds limit");
          elements.push_back(prod);
          next.push_back(prod);
        }
      }
    }
    frontier = std::move(next);
  }
  return elements;
}

}  // namespace massey
