#include <doctest.h>

#include <random>

#include "massey/magnus.hpp"
#include "test_helpers.hpp"

using namespace massey;

TEST_CASE("images of generators and inverses") {
  TruncatedSeries s = magnus_image(parse_word("x1", 2), 5);
  CHECK(s.constant() == 1);
  CHECK(s.deg1(1) == 1);
  CHECK(s.deg1(2) == 0);
  CHECK(s.deg2(1, 1) == 0);

  // (1 + X)^-1 = 1 - X + X^2 - X^3
  TruncatedSeries inv = magnus_image(parse_word("x1^-1", 2), 5);
  CHECK(inv.deg1(1) == 4);
  CHECK(inv.deg2(1, 1) == 1);
  CHECK(inv.deg3(1, 1, 1) == 4);
}

TEST_CASE("binomial coefficients reduce correctly for powers") {
  // x^4 over F_2: C(4,1) = C(4,2) = C(4,3) = 0 mod 2
  CHECK(magnus_image(parse_word("x1^4", 1), 2).is_one());
  // x^2 over F_2: 1 + X^2
  TruncatedSeries sq = magnus_image(parse_word("x1^2", 1), 2);
  CHECK(sq.deg1(1) == 0);
  CHECK(sq.deg2(1, 1) == 1);
  CHECK(sq.deg3(1, 1, 1) == 0);
  // x^3 over F_3: 1 + X^3
  TruncatedSeries cu = magnus_image(parse_word("x1^3", 1), 3);
  CHECK(cu.deg1(1) == 0);
  CHECK(cu.deg2(1, 1) == 0);
  CHECK(cu.deg3(1, 1, 1) == 1);
  CHECK(magnus_image(parse_word("x1^9", 1), 3).is_one());
}

TEST_CASE("commutator images start in degree 2") {
  TruncatedSeries s = magnus_image(parse_word("[x1,x2]", 2), 5);
  CHECK(s.deg1(1) == 0);
  CHECK(s.deg1(2) == 0);
  CHECK(s.deg2(1, 2) == 1);
  CHECK(s.deg2(2, 1) == 4);
  CHECK(s.deg2(1, 1) == 0);
  CHECK(s.deg2(2, 2) == 0);
}

TEST_CASE("series inverse inverts") {
  std::mt19937 rng(424);
  for (long long p : {2ll, 3ll, 5ll}) {
    for (int trial = 0; trial < 50; ++trial) {
      FreeWord w = testutil::random_word(rng, 3);
      TruncatedSeries s = magnus_image(w, p);
      CHECK((s * s.inverse()).is_one());
      CHECK((s.inverse() * s).is_one());
    }
  }
}

TEST_CASE("fast image agrees with the naive letterwise oracle") {
  std::mt19937 rng(90210);
  for (long long p : {2ll, 3ll, 5ll}) {
    for (int d : {1, 2, 3, 4}) {
      for (int trial = 0; trial < 60; ++trial) {
        FreeWord w = testutil::random_word(rng, d);
        CHECK(testutil::series_match(magnus_image(w, p), testutil::naive_image(w, p)));
      }
    }
  }
}

TEST_CASE("image is a homomorphism") {
  std::mt19937 rng(31337);
  for (long long p : {2ll, 3ll}) {
    for (int trial = 0; trial < 60; ++trial) {
      FreeWord u = testutil::random_word(rng, 3);
      FreeWord v = testutil::random_word(rng, 3);
      CHECK(magnus_image(word_multiply(u, v), p) == magnus_image(u, p) * magnus_image(v, p));
    }
  }
}

TEST_CASE("filtration levels of standard elements") {
  CHECK(zassenhaus_level(FreeWord(2), 2) == 0);
  CHECK(zassenhaus_level(parse_word("x1", 2), 2) == 1);
  CHECK(zassenhaus_level(parse_word("x1*x2", 2), 3) == 1);
  CHECK(zassenhaus_level(parse_word("[x1,x2]", 2), 2) == 2);
  CHECK(zassenhaus_level(parse_word("[x1,x2]", 2), 5) == 2);
  CHECK(zassenhaus_level(parse_word("x1^2", 2), 2) == 2);
  CHECK(zassenhaus_level(parse_word("x1^3", 2), 3) == 3);
  CHECK(zassenhaus_level(parse_word("x1^5", 2), 5) == 4);
  CHECK(zassenhaus_level(parse_word("[[x1,x2],x1]", 2), 2) == 3);
  CHECK(zassenhaus_level(parse_word("[[x1,x2],x2]", 2), 3) == 3);
  CHECK(zassenhaus_level(parse_word("x1^4", 2), 2) == 4);
  CHECK(zassenhaus_level(parse_word("[[x1,x2],[x1,x3]]", 3), 2) == 4);
  // a word that freely reduces to the identity sits at level 0, not 4
  CHECK(zassenhaus_level(parse_word("[[x1,x2],[x1,x2]]", 2), 2) == 0);
}

TEST_CASE("filtration law: products, commutators and p-th powers") {
  std::mt19937 rng(8086);
  auto clamp4 = [](long long v) { return v > 4 ? 4 : static_cast<int>(v); };
  for (long long p : {2ll, 3ll}) {
    for (int trial = 0; trial < 120; ++trial) {
      FreeWord u = testutil::random_s2_word(rng, p, 3);
      FreeWord v = testutil::random_s2_word(rng, p, 3);
      int lu = zassenhaus_level(u, p);
      int lv = zassenhaus_level(v, p);
      if (lu == 0 || lv == 0) continue;
      FreeWord c = word_commutator(u, v);
      if (!c.empty()) CHECK(zassenhaus_level(c, p) >= clamp4(lu + lv));
      int lp = zassenhaus_level(word_multiply(u, v), p);
      if (lp != 0) CHECK(lp >= std::min(lu, lv));
      int lpow = zassenhaus_level(word_power(u, p), p);
      if (lpow != 0) CHECK(lpow >= clamp4(p * lu));
    }
  }
}

TEST_CASE("product expansion of [x1*x2, x3] decomposes with a change-of-basis triple") {
  for (long long p : {2ll, 3ll, 5ll}) {
    CanonicalDecomposition dec = canonical_decompose(parse_word("[x1*x2,x3]", 3), p);
    CHECK(dec.a.empty());
    CHECK(dec.b == std::map<std::pair<int, int>, int>{{{1, 3}, 1}, {{2, 3}, 1}});
    CHECK(dec.c == std::map<std::array<int, 3>, int>{{{1, 3, 2}, 1}});
    CHECK(dec.residual.is_one());
    CHECK(dec.u(1, 3) == 1);
    CHECK(dec.u(3, 1) == 1);
    CHECK(dec.u(1, 2) == 0);
  }
}

TEST_CASE("mixed commutator relator decomposes into one pair and one triple") {
  for (long long p : {2ll, 3ll}) {
    CanonicalDecomposition dec =
        canonical_decompose(parse_word("[x4,x5]*[[x2,x3],x1]", 5), p);
    CHECK(dec.a.empty());
    CHECK(dec.b == std::map<std::pair<int, int>, int>{{{4, 5}, 1}});
    CHECK(dec.c == std::map<std::array<int, 3>, int>{{{2, 3, 1}, 1}});
    CHECK(dec.residual.is_one());
  }
}

TEST_CASE("square and cube coefficients land in the a map") {
  CanonicalDecomposition d2 = canonical_decompose(parse_word("x1^2*[[x1,x2],x2]", 2), 2);
  CHECK(d2.a == std::map<int, int>{{1, 1}});
  CHECK(d2.b.empty());
  CHECK(d2.c == std::map<std::array<int, 3>, int>{{{1, 2, 2}, 1}});

  CanonicalDecomposition d3 = canonical_decompose(parse_word("x1^3", 1), 3);
  CHECK(d3.a == std::map<int, int>{{1, 1}});
  CanonicalDecomposition d6 = canonical_decompose(parse_word("x1^6", 1), 3);
  CHECK(d6.a == std::map<int, int>{{1, 2}});
  CanonicalDecomposition d9 = canonical_decompose(parse_word("x1^9", 1), 3);
  CHECK(d9.a.empty());

  // odd p > 3 carries no power coefficients at all
  CanonicalDecomposition d5 = canonical_decompose(parse_word("x1^5", 1), 5);
  CHECK(d5.a.empty());
  CHECK(d5.b.empty());
  CHECK(d5.c.empty());
}

TEST_CASE("decomposition rejects words outside S_(2)") {
  CHECK_THROWS_AS(canonical_decompose(parse_word("x1", 2), 2), NotInS2);
  CHECK_THROWS_AS(canonical_decompose(parse_word("x1^2*x2", 2), 2), NotInS2);
  CHECK_THROWS_AS(canonical_decompose(parse_word("x1^2", 2), 3), NotInS2);
}

TEST_CASE("normal-form factor order tracks p") {
  std::map<int, int> a{{1, 1}};
  std::map<std::pair<int, int>, int> b{{{1, 2}, 1}};
  std::map<std::array<int, 3>, int> c;
  CHECK(decomposition_word(2, 2, a, b, c) == parse_word("x1^2*[x1,x2]", 2));
  CHECK(decomposition_word(3, 2, a, b, c) == parse_word("[x1,x2]*x1^3", 2));
  CHECK(decomposition_word(5, 2, {}, b, c) == parse_word("[x1,x2]", 2));
  CHECK_THROWS_AS(decomposition_word(5, 2, a, b, c), Error);
}

TEST_CASE("random coefficient maps round-trip exactly") {
  std::mt19937 rng(271828);
  for (long long p : {2ll, 3ll, 5ll}) {
    for (int d : {2, 3, 4}) {
      for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> coeff(0, static_cast<int>(p) - 1);
        std::map<int, int> a;
        std::map<std::pair<int, int>, int> b;
        std::map<std::array<int, 3>, int> c;
        if (p == 2 || p == 3) {
          for (int i = 1; i <= d; ++i) {
            if (int v = coeff(rng); v) a[i] = v;
          }
        }
        for (int i = 1; i <= d; ++i) {
          for (int j = i + 1; j <= d; ++j) {
            if (int v = coeff(rng); v) b[{i, j}] = v;
            for (int k = 1; k <= j; ++k) {
              if (int v = coeff(rng); v) c[{i, j, k}] = v;
            }
          }
        }
        FreeWord w = decomposition_word(p, d, a, b, c);
        // behind an invisible S_(4) tail
        w.append(testutil::random_s4_word(rng, p, d));
        CanonicalDecomposition dec = canonical_decompose(w, p);
        CHECK(dec.a == a);
        CHECK(dec.b == b);
        CHECK(dec.c == c);
        CHECK(dec.residual.is_one());
      }
    }
  }
}

TEST_CASE("arbitrary S_(2) words reconstruct modulo S_(4)") {
  std::mt19937 rng(161803);
  for (long long p : {2ll, 3ll, 5ll}) {
    for (int d : {2, 3}) {
      for (int trial = 0; trial < 40; ++trial) {
        FreeWord w = testutil::random_s2_word(rng, p, d);
        CanonicalDecomposition dec = canonical_decompose(w, p);
        CHECK(dec.residual.is_one());
        // the reconstructed product has the same truncated image
        CHECK(magnus_image(decomposition_word(dec), p) == magnus_image(w, p));
      }
    }
  }
}

TEST_CASE("words already in S_(4) decompose trivially") {
  for (long long p : {2ll, 3ll}) {
    std::mt19937 rng(999 + p);
    for (int trial = 0; trial < 30; ++trial) {
      FreeWord w = testutil::random_s4_word(rng, p, 3);
      CanonicalDecomposition dec = canonical_decompose(w, p);
      CHECK(dec.a.empty());
      CHECK(dec.b.empty());
      CHECK(dec.c.empty());
      CHECK(dec.residual.is_one());
    }
  }
}

TEST_CASE("coefficient accessors validate their ranges") {
  CanonicalDecomposition dec = canonical_decompose(parse_word("[x1,x2]", 3), 2);
  CHECK(dec.b_at(1, 2) == 1);
  CHECK(dec.b_at(1, 3) == 0);
  CHECK_THROWS_AS(dec.b_at(2, 1), IndexError);
  CHECK_THROWS_AS(dec.u(1, 1), IndexError);
  CHECK_THROWS_AS(dec.c_at(1, 2, 3), IndexError);
  CHECK(dec.c_at(1, 3, 2) == 0);
}

TEST_CASE("non-prime moduli are rejected") {
  CHECK_THROWS_AS(magnus_image(parse_word("x1", 1), 4), Error);
  CHECK_THROWS_AS(canonical_decompose(parse_word("x1^4", 1), 4), Error);
}
