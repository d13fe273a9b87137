#include <doctest.h>

#include "tforge/tile.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace tforge;

namespace {

TileShape int_tile(long a, long b, long c) { return tile_from_sides(QRoot3(a), QRoot3(b), QRoot3(c)); }

bool contains(const std::vector<EdgeRelation>& v, EdgeRelation::Kind k, long j, long u, long w) {
  return std::find(v.begin(), v.end(), EdgeRelation{k, j, u, w}) != v.end();
}

// Exhaustive integer enumeration of j*lhs = u*p + v*q with gcd(j,u,v) = 1.
std::vector<std::array<long, 3>> brute_relations(long lhs, long p, long q, long bound) {
  std::vector<std::array<long, 3>> out;
  for (long j = 1; j <= bound; ++j)
    for (long u = 0; u <= j * lhs; ++u)
      for (long v = 0; v <= j * lhs; ++v)
        if (j * lhs == u * p + v * q && std::gcd(std::gcd(j, u), v) == 1) out.push_back({j, u, v});
  return out;
}

}  // namespace

TEST_CASE("tile_from_sides") {
  const TileShape t = int_tile(3, 5, 7);
  CHECK(t.cos_alpha == QRoot3(Rational(13, 14)));
  CHECK(t.cos_beta == QRoot3(Rational(11, 14)));
  CHECK(t.area == QRoot3(0, Rational(15, 4)));
  const TileShape iso = tile_from_sides(1, 1, QRoot3::sqrt3());
  CHECK(iso.cos_alpha == QRoot3(0, Rational(1, 2)));
  CHECK(iso.cos_beta == iso.cos_alpha);
  CHECK(iso.area == QRoot3(0, Rational(1, 4)));
  CHECK_THROWS_AS(int_tile(3, 5, 6), std::invalid_argument);
  CHECK_THROWS_AS(int_tile(0, 5, 5), std::invalid_argument);
  const TileShape swapped = int_tile(5, 3, 7);
  CHECK(swapped.a == QRoot3(3));
}

TEST_CASE("eisenstein triples") {
  auto check = [](long m, long n, long a, long b, long c) {
    const auto t = eisenstein_triple(m, n);
    CHECK(t.a == a);
    CHECK(t.b == b);
    CHECK(t.c == c);
    CHECK(t.c * t.c == t.a * t.a + t.b * t.b + t.a * t.b);
  };
  check(2, 1, 3, 5, 7);
  check(3, 1, 8, 7, 13);
  check(3, 2, 5, 16, 19);
  CHECK_THROWS_AS(eisenstein_triple(2, 2), std::invalid_argument);
}

TEST_CASE("shape from relation") {
  const ShapeRoot iso = shape_from_relation(Rational(1), Rational(0));
  REQUIRE(iso.exact);
  CHECK(*iso.exact == QRoot3(0, Rational(1, 3)));
  const ShapeRoot r1 = shape_from_relation(Rational(5, 3), Rational(0));
  REQUIRE(r1.exact);
  CHECK(*r1.exact == QRoot3(Rational(3, 7)));
  const ShapeRoot r2 = shape_from_relation(Rational(0), Rational(5, 7));
  REQUIRE(r2.exact);
  CHECK(*r2.exact == QRoot3(Rational(3, 7)));
  CHECK_THROWS_AS(shape_from_relation(Rational(0), Rational(1)), std::domain_error);
  CHECK_THROWS_AS(shape_from_relation(Rational(2), Rational(3, 2)), std::domain_error);
  // A root outside Q(sqrt3) comes back as a surd that still solves the quadratic.
  const ShapeRoot s = shape_from_relation(Rational(1), Rational(1, 2));
  CHECK_FALSE(s.exact);
  CHECK(s.surd.satisfies_quadratic());
  CHECK(s.to_double() > 0);
  CHECK(s.to_double() < 1);
}

TEST_CASE("relations of the (3,5,7) tile match brute force") {
  const TileShape t = int_tile(3, 5, 7);
  const auto rels = relations_of_tile(t, 4);
  CHECK(contains(rels, EdgeRelation::Kind::BSide, 2, 1, 1));
  CHECK(contains(rels, EdgeRelation::Kind::ASide, 4, 1, 1));
  for (auto [kind, lhs, p, q] : std::vector<std::tuple<EdgeRelation::Kind, long, long, long>>{
           {EdgeRelation::Kind::BSide, 5, 3, 7}, {EdgeRelation::Kind::ASide, 3, 5, 7}, {EdgeRelation::Kind::CSide, 7, 3, 5}}) {
    const auto oracle = brute_relations(lhs, p, q, 4);
    long count = std::count_if(rels.begin(), rels.end(), [&](const EdgeRelation& r) { return r.kind == kind; });
    CHECK(count == static_cast<long>(oracle.size()));
    for (const auto& o : oracle) CHECK(contains(rels, kind, o[0], o[1], o[2]));
  }
  const auto from_x = relation_from_shape(Rational(3, 7), 4);
  CHECK(from_x == rels);
  for (const auto& r : rels) CHECK(r.holds(t));
}

TEST_CASE("irrational a/c admits at most one b-relation") {
  const TileShape iso = tile_from_sides(1, 1, QRoot3::sqrt3());
  const auto rels = relations_of_tile(iso, 12);
  long b_count = std::count_if(rels.begin(), rels.end(), [](const EdgeRelation& r) { return r.kind == EdgeRelation::Kind::BSide; });
  CHECK(b_count == 1);
  CHECK(contains(rels, EdgeRelation::Kind::BSide, 1, 1, 0));
  // a/c = 1/2 gives b outside Q(sqrt3); only 2a = c survives.
  const auto half = relation_from_shape(Rational(1, 2), 12);
  REQUIRE(half.size() == 2u);
  CHECK(contains(half, EdgeRelation::Kind::ASide, 2, 0, 1));
  CHECK(contains(half, EdgeRelation::Kind::CSide, 1, 2, 0));
}

TEST_CASE("cos ratio and classification") {
  CHECK(cos_ratio(int_tile(3, 5, 7)) == Rational(13, 11));
  CHECK(cos_ratio(tile_from_sides(1, 1, QRoot3::sqrt3())) == Rational(1));
  CHECK(cos_ratio(int_tile(5, 16, 19)) == Rational(37, 26));
  const TileClass c1 = classify_tile(int_tile(3, 5, 7));
  CHECK(c1.integer_similar);
  CHECK_FALSE(c1.alpha_rational_multiple_of_pi);
  const TileClass c2 = classify_tile(tile_from_sides(1, 1, QRoot3::sqrt3()));
  CHECK_FALSE(c2.integer_similar);
  CHECK(c2.alpha_rational_multiple_of_pi);
  CHECK(c2.alpha_over_pi == Rational(1, 6));
}

TEST_CASE("property: random Eisenstein triples") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> dm(2, 12);
  int done = 0;
  while (done < 50) {
    const long m = dm(rng);
    const long n = std::uniform_int_distribution<long>(1, m - 1)(rng);
    if (std::gcd(m, n) != 1) continue;
    ++done;
    const auto e = eisenstein_triple(m, n);
    const TileShape t = int_tile(e.a, e.b, e.c);
    CHECK(t.c * t.c - t.a * t.a - t.b * t.b - t.a * t.b == QRoot3(0));
    CHECK(t.area.sign() > 0);
    if (t.a < t.b) CHECK(t.cos_alpha > t.cos_beta);
    CHECK(QRoot3(cos_ratio(t)) == t.cos_alpha / t.cos_beta);
    CHECK_FALSE(classify_tile(t).alpha_rational_multiple_of_pi);
    // Roundtrip: relations found from a/c determine a/c again.
    const Rational x = (t.a / t.c).r();
    const auto rels = relation_from_shape(x, e.a + e.b + e.c);
    long shape_determining = 0;
    for (const auto& r : rels) {
      if (r.kind == EdgeRelation::Kind::CSide) continue;
      ++shape_determining;
      const ShapeRatios s = shape_from_relation(r);
      REQUIRE(s.a_over_c.exact);
      CHECK(*s.a_over_c.exact == QRoot3(x));
      CHECK(s.a_over_c.surd.satisfies_quadratic());
    }
    CHECK(shape_determining > 0);
  }
}
