#pragma once

#include <map>
#include <random>
#include <vector>

#include "massey/magnus.hpp"
#include "massey/unipotent.hpp"
#include "massey/words.hpp"

namespace testutil {

using massey::FreeWord;

// Reference implementation of the truncated Magnus expansion, deliberately
// structured differently from the library: sparse monomial maps and letterwise
// multiplication by 1 + X or its explicit truncated inverse.
struct NaiveSeries {
  long long p = 2;
  int d = 1;
  std::map<std::vector<int>, long long> terms;  // monomial (generator list) -> coeff

  static NaiveSeries one(long long p, int d) {
    NaiveSeries s;
    s.p = p;
    s.d = d;
    s.terms[{}] = 1;
    return s;
  }

  NaiveSeries mul(const NaiveSeries& other) const {
    NaiveSeries out;
    out.p = p;
    out.d = d;
    for (const auto& [ma, ca] : terms) {
      for (const auto& [mb, cb] : other.terms) {
        if (ma.size() + mb.size() > 3) continue;
        std::vector<int> key = ma;
        key.insert(key.end(), mb.begin(), mb.end());
        long long v = (out.terms.count(key) ? out.terms[key] : 0) + ca * cb;
        v %= p;
        if (v < 0) v += p;
        if (v == 0) {
          out.terms.erase(key);
        } else {
          out.terms[key] = v;
        }
      }
    }
    return out;
  }
};

inline NaiveSeries naive_letter(long long p, int d, int gen, bool inverse) {
  NaiveSeries s;
  s.p = p;
  s.d = d;
  if (!inverse) {
    s.terms[{}] = 1;
    s.terms[{gen}] = 1;
  } else {
    // (1 + X)^-1 = 1 - X + X^2 - X^3 after truncation
    s.terms[{}] = 1;
    s.terms[{gen}] = (p - 1) % p;
    s.terms[{gen, gen}] = 1;
    s.terms[{gen, gen, gen}] = (p - 1) % p;
    for (auto it = s.terms.begin(); it != s.terms.end();) {
      it = it->second == 0 ? s.terms.erase(it) : std::next(it);
    }
  }
  return s;
}

inline NaiveSeries naive_image(const FreeWord& w, long long p) {
  NaiveSeries s = NaiveSeries::one(p, w.generator_count());
  for (const massey::Letter& l : w.letters()) {
    const bool inv = l.exp < 0;
    const long long count = inv ? -l.exp : l.exp;
    for (long long t = 0; t < count; ++t) {
      s = s.mul(naive_letter(p, w.generator_count(), l.gen, inv));
    }
  }
  return s;
}

inline bool series_match(const massey::TruncatedSeries& fast, const NaiveSeries& slow) {
  const int d = fast.var_count();
  auto coeff = [&](const std::vector<int>& mono) {
    auto it = slow.terms.find(mono);
    return it == slow.terms.end() ? 0ll : it->second;
  };
  if (fast.constant() != coeff({})) return false;
  for (int i = 1; i <= d; ++i) {
    if (fast.deg1(i) != coeff({i})) return false;
    for (int j = 1; j <= d; ++j) {
      if (fast.deg2(i, j) != coeff({i, j})) return false;
      for (int k = 1; k <= d; ++k) {
        if (fast.deg3(i, j, k) != coeff({i, j, k})) return false;
      }
    }
  }
  return true;
}

inline FreeWord random_word(std::mt19937& rng, int d, int max_runs = 6) {
  std::uniform_int_distribution<int> runs(1, max_runs);
  std::uniform_int_distribution<int> gens(1, d);
  std::uniform_int_distribution<int> exps(-3, 3);
  FreeWord w(d);
  const int n = runs(rng);
  for (int t = 0; t < n; ++t) {
    int e = exps(rng);
    if (e == 0) e = 1;
    w.append(gens(rng), e);
  }
  return w;
}

// Random element of S_(2): product of commutators and p-th powers.
inline FreeWord random_s2_word(std::mt19937& rng, long long p, int d) {
  std::uniform_int_distribution<int> factors(1, 4);
  std::uniform_int_distribution<int> kind(0, 2);
  FreeWord w(d);
  const int n = factors(rng);
  for (int t = 0; t < n; ++t) {
    if (kind(rng) == 0) {
      w.append(massey::word_power(random_word(rng, d, 3), p));
    } else {
      w.append(massey::word_commutator(random_word(rng, d, 3), random_word(rng, d, 3)));
    }
  }
  return w;
}

// Random element of S_(4), used as an invisible tail behind normal forms.
inline FreeWord random_s4_word(std::mt19937& rng, long long p, int d) {
  std::uniform_int_distribution<int> kind(0, 3);
  auto u = random_word(rng, d, 3);
  auto v = random_word(rng, d, 3);
  auto w2 = random_word(rng, d, 3);
  auto z = random_word(rng, d, 3);
  switch (kind(rng)) {
    case 0:
      return massey::word_commutator(massey::word_commutator(massey::word_commutator(u, v), w2),
                                     z);
    case 1:
      return massey::word_commutator(massey::word_commutator(u, v),
                                     massey::word_commutator(w2, z));
    case 2:
      return massey::word_power(massey::word_commutator(u, v), p);
    default:
      return massey::word_power(u, p * p);
  }
}

// Exhaustive corner search: does some central corner assignment turn rep into
// a true homomorphism of the quotient group? Independent of lift_exists.
inline bool brute_force_liftable(const massey::PresentationSpec& spec,
                                 const massey::BarAssignment& rep) {
  const long long p = spec.p;
  const int d = spec.d;
  const int n = rep.empty() ? 0 : rep[0].fold();
  std::uint64_t total = 1;
  for (int g = 0; g < d; ++g) total *= static_cast<std::uint64_t>(p);

  for (std::uint64_t idx = 0; idx < total; ++idx) {
    massey::FullAssignment images;
    std::uint64_t u = idx;
    for (int g = 0; g < d; ++g) {
      massey::UnipotentMatrix m = rep[g].matrix();
      m.set(1, n + 1, static_cast<int>(u % p));
      u /= p;
      images.push_back(std::move(m));
    }
    bool ok = true;
    for (const FreeWord& r : spec.relators) {
      if (!massey::evaluate_word(images, r).is_identity()) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace testutil
