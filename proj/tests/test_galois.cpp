#include <doctest.h>

#include <random>
#include <vector>

#include "massey/galois_q.hpp"
#include "massey/report.hpp"
#include "json.hpp"

using namespace massey;

namespace {

int symbol(long long a, long long b, const Place& v) {
  return hilbert_symbol(SquareClass(a), SquareClass(b), v);
}

}  // namespace

TEST_CASE("square classes strip square factors") {
  CHECK(SquareClass(8).representative() == 2);
  CHECK(SquareClass(8).scale() == 2);
  CHECK(SquareClass(-4).representative() == -1);
  CHECK(SquareClass(-4).scale() == 2);
  CHECK(SquareClass(360).representative() == 10);
  CHECK(SquareClass(360).scale() == 6);
  CHECK(SquareClass(7).representative() == 7);
  CHECK(SquareClass(1).is_one());
  CHECK(SquareClass(9).is_one());
  CHECK_FALSE(SquareClass(-1).is_one());
  CHECK(SquareClass(2) == SquareClass(18));
  CHECK_THROWS_AS(SquareClass(mpz_class(0)), Error);
}

TEST_CASE("hilbert symbol spot values") {
  CHECK(symbol(-1, -1, Place::real()) == -1);
  CHECK(symbol(-1, 2, Place::real()) == 1);
  CHECK(symbol(-1, -1, Place::finite(2)) == -1);
  CHECK(symbol(3, -1, Place::finite(2)) == -1);
  CHECK(symbol(3, -1, Place::finite(3)) == -1);
  CHECK(symbol(3, 3, Place::finite(2)) == -1);
  CHECK(symbol(2, 3, Place::finite(3)) == -1);
  CHECK(symbol(2, 7, Place::finite(7)) == 1);
  CHECK(symbol(2, -1, Place::finite(2)) == 1);
  CHECK(symbol(5, 11, Place::finite(5)) == 1);
  CHECK(symbol(5, 11, Place::finite(11)) == 1);
  // symbols depend only on the square classes
  CHECK(symbol(12, -1, Place::finite(2)) == symbol(3, -1, Place::finite(2)));
}

TEST_CASE("hilbert symbol is symmetric and multiplicative") {
  std::mt19937 rng(1729);
  std::uniform_int_distribution<long> pick(-30, 30);
  auto draw = [&]() {
    long v = 0;
    while (v == 0) v = pick(rng);
    return v;
  };
  for (int t = 0; t < 200; ++t) {
    long a = draw(), b = draw(), c = draw();
    std::vector<Place> places = relevant_places(SquareClass(a), SquareClass(b * c));
    for (const Place& v : relevant_places(SquareClass(a), SquareClass(b))) places.push_back(v);
    for (const Place& v : relevant_places(SquareClass(a), SquareClass(c))) places.push_back(v);
    for (const Place& v : places) {
      CHECK(symbol(a, b, v) == symbol(b, a, v));
      CHECK(symbol(a, b * c, v) == symbol(a, b, v) * symbol(a, c, v));
    }
  }
}

TEST_CASE("product of the symbol over all places is trivial") {
  std::mt19937 rng(4104);
  std::uniform_int_distribution<long> pick(-40, 40);
  for (int t = 0; t < 300; ++t) {
    long a = 0, b = 0;
    while (a == 0) a = pick(rng);
    while (b == 0) b = pick(rng);
    int prod = 1;
    for (const Place& v : relevant_places(SquareClass(a), SquareClass(b))) {
      prod *= hilbert_symbol(SquareClass(a), SquareClass(b), v);
    }
    CHECK(prod == 1);
  }
}

TEST_CASE("the symbol is +1 outside the relevant places") {
  for (long q : {3l, 5l, 7l, 11l, 13l}) {
    CHECK(symbol(-1, 2, Place::finite(q)) == 1);
    CHECK(symbol(30 % q == 0 ? 1 : 30, 1, Place::finite(q)) == 1);
  }
  CHECK(relevant_places(SquareClass(6), SquareClass(35)).size() == 5);  // real, 2, 3, 5, 7
}

TEST_CASE("cup product vanishing over the rationals") {
  CHECK(cup_vanishes(SquareClass(2), SquareClass(-1)));
  CHECK(cup_vanishes(SquareClass(-1), SquareClass(2)));
  CHECK(cup_vanishes(SquareClass(5), SquareClass(11)));
  CHECK_FALSE(cup_vanishes(SquareClass(3), SquareClass(-1)));
  CHECK_FALSE(cup_vanishes(SquareClass(-1), SquareClass(-1)));
  CHECK_FALSE(cup_vanishes(SquareClass(3), SquareClass(5)));
  CHECK(cup_vanishes(SquareClass(1), SquareClass(-7)));
}

TEST_CASE("norm representations match the worked examples") {
  NormRepresentation n1 = norm_solve(SquareClass(2), SquareClass(-1));
  CHECK(n1.a1 == 1);
  CHECK(n1.a2 == 1);
  NormRepresentation n2 = norm_solve(SquareClass(-1), SquareClass(2));
  CHECK(n2.a1 == 1);
  CHECK(n2.a2 == 1);
  NormRepresentation n3 = norm_solve(SquareClass(5), SquareClass(11));
  CHECK(n3.a1 == 4);
  CHECK(n3.a2 == 1);
  NormRepresentation n4 = norm_solve(SquareClass(2), SquareClass(-2));
  CHECK(n4.a1 == 0);
  CHECK(n4.a2 == 1);
  NormRepresentation n5 = norm_solve(SquareClass(3), SquareClass(-2));
  CHECK(n5.a1 == 1);
  CHECK(n5.a2 == 1);
  // square-class arguments reduce first: 8 ~ 2
  NormRepresentation n6 = norm_solve(SquareClass(8), SquareClass(-1));
  CHECK(n6.a1 == 1);
  CHECK(n6.a2 == 1);
  // trivial classes short-circuit
  NormRepresentation n7 = norm_solve(SquareClass(9), SquareClass(7));
  CHECK(n7.a1 == 4);
  CHECK(n7.a2 == 3);
  NormRepresentation n8 = norm_solve(SquareClass(7), SquareClass(4));
  CHECK(n8.a1 == 1);
  CHECK(n8.a2 == 0);
}

TEST_CASE("norm solutions satisfy the defining identity exactly") {
  std::mt19937 rng(90125);
  std::uniform_int_distribution<long> pick(-45, 45);
  int solved = 0;
  for (int t = 0; t < 400; ++t) {
    long a = 0, b = 0;
    while (a == 0) a = pick(rng);
    while (b == 0) b = pick(rng);
    SquareClass ca(a), cb(b);
    if (!cup_vanishes(ca, cb)) {
      CHECK_THROWS_AS(norm_solve(ca, cb), NotANorm);
      continue;
    }
    NormRepresentation n = norm_solve(ca, cb);
    CHECK(n.a1 * n.a1 - ca.representative() * n.a2 * n.a2 == cb.representative());
    ++solved;
  }
  CHECK(solved > 50);
}

TEST_CASE("norm search respects the height cap") {
  // 13 = 3^2 + 2^2 needs radius 2; a cap of 1 cuts the search off
  CHECK_THROWS_AS(norm_solve(SquareClass(-1), SquareClass(13), 1), HeightCapExceeded);
  NormRepresentation ok = norm_solve(SquareClass(-1), SquareClass(13), 2);
  CHECK(ok.a1 * ok.a1 + ok.a2 * ok.a2 == 13);
}

TEST_CASE("splitting points for the worked squarefree triples") {
  GaloisCertificate c1 = splitting_point(SquareClass(2), SquareClass(-1), SquareClass(2));
  REQUIRE(c1.point.has_value());
  CHECK(c1.point->x == 4);
  CHECK(c1.point->y1 == 2);
  CHECK(c1.point->y2 == 1);
  CHECK(c1.point->y3 == 1);
  CHECK(c1.point->y4 == 0);
  CHECK(c1.lhs == -16);
  CHECK(c1.lhs == c1.rhs);

  GaloisCertificate c2 = splitting_point(SquareClass(2), SquareClass(-2), SquareClass(3));
  REQUIRE(c2.point.has_value());
  CHECK(c2.point->x == 2);
  CHECK(c2.point->y1 == 1);
  CHECK(c2.point->y2 == 1);
  CHECK(c2.point->y3 == 1);
  CHECK(c2.point->y4 == 0);
  CHECK(c2.lhs == c2.rhs);
  REQUIRE(c2.norm_cb.has_value());
  CHECK(c2.norm_cb->a1 == 1);

  // b = -a * y^2 forces the alternate point with y4 = -1
  GaloisCertificate c3 = splitting_point(SquareClass(2), SquareClass(-2), SquareClass(2));
  REQUIRE(c3.point.has_value());
  CHECK(c3.point->x == 8);
  CHECK(c3.point->y1 == 2);
  CHECK(c3.point->y2 == 1);
  CHECK(c3.point->y3 == 1);
  CHECK(c3.point->y4 == -1);
  CHECK(c3.lhs == c3.rhs);

  CHECK_THROWS_AS(splitting_point(SquareClass(3), SquareClass(-1), SquareClass(5)),
                  NotDefinedError);
}

TEST_CASE("full check rescales the point to the raw inputs") {
  GaloisReport report = galois_triple_check(2, -1, 8);
  CHECK(report.defined);
  REQUIRE(report.point.has_value());
  CHECK(report.point->x == 4);
  CHECK(report.point->y1 == 2);
  CHECK(report.point->y2 == 1);
  CHECK(report.point->y3 == mpq_class(1, 2));
  CHECK(report.point->y4 == 0);
  CHECK(report.lhs == report.rhs);
  CHECK(report.lhs == -16);

  nlohmann::json j = nlohmann::json::parse(galois_report_json(report));
  CHECK(j["verdict"] == "Vanishes");
  CHECK(j["point"]["x"] == "4");
  CHECK(j["point"]["y3"] == "1/2");

  GaloisReport plain = galois_triple_check(5, 11, 5);
  CHECK(plain.defined);
  REQUIRE(plain.point.has_value());
  CHECK(plain.point->x == 16);
  CHECK(plain.lhs == 11 * 256);
  CHECK(plain.lhs == plain.rhs);
}

TEST_CASE("square entries certify vanishing without a point") {
  GaloisReport report = galois_triple_check(4, 5, 5);
  CHECK(report.defined);
  REQUIRE(report.certificate.has_value());
  CHECK(report.certificate->trivial);
  CHECK_FALSE(report.point.has_value());
  nlohmann::json j = nlohmann::json::parse(galois_report_json(report));
  CHECK(j["trivial_vanishing"] == true);
  CHECK(galois_report_text(report).find("needs no point") != std::string::npos);

  GaloisReport middle = galois_triple_check(2, 9, 2);
  CHECK(middle.defined);
  CHECK(middle.certificate->trivial);
}

TEST_CASE("undefined triples report the failing pair and place") {
  GaloisReport r1 = galois_triple_check(3, -1, 5);
  CHECK_FALSE(r1.defined);
  REQUIRE(r1.failure.has_value());
  CHECK(r1.failure->first == 0);
  CHECK(r1.failure->second == Place::finite(2));
  nlohmann::json j = nlohmann::json::parse(galois_report_json(r1));
  CHECK(j["verdict"] == "NotDefined");
  CHECK(j["failure"]["pair"] == "a,b");
  CHECK(j["failure"]["place"] == "2");

  GaloisReport r2 = galois_triple_check(1, 3, -1);
  CHECK_FALSE(r2.defined);
  REQUIRE(r2.failure.has_value());
  CHECK(r2.failure->first == 1);
  CHECK(r2.failure->second == Place::finite(2));

  GaloisReport r3 = galois_triple_check(-1, -1, 7);
  CHECK_FALSE(r3.defined);
  CHECK(r3.failure->first == 0);
  CHECK(r3.failure->second == Place::real());
}

TEST_CASE("desk-scale sweep verifies every defined triple") {
  std::mt19937 rng(20090);
  std::uniform_int_distribution<long> pick(-25, 25);
  int defined = 0;
  for (int t = 0; t < 250; ++t) {
    long a = 0, b = 0, c = 0;
    while (a == 0) a = pick(rng);
    while (b == 0) b = pick(rng);
    while (c == 0) c = pick(rng);
    GaloisReport report = galois_triple_check(a, b, c);
    if (!report.defined) {
      CHECK(report.failure.has_value());
      continue;
    }
    ++defined;
    REQUIRE(report.certificate.has_value());
    if (!report.certificate->trivial) {
      REQUIRE(report.point.has_value());
      CHECK(report.point->x != 0);
      CHECK(variety_lhs(b, report.point->x) == variety_rhs(a, c, *report.point));
    }
  }
  CHECK(defined > 20);
}
