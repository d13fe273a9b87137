#include "tforge/tile.hpp"

#include "tforge/json_io.hpp"
#include "tforge/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tforge {

TileShape tile_from_sides(const QRoot3& a_in, const QRoot3& b_in, const QRoot3& c, SideOrder order) {
  if (a_in.sign() <= 0 || b_in.sign() <= 0 || c.sign() <= 0)
    throw std::invalid_argument("tile sides must be positive");
  if (c * c != a_in * a_in + b_in * b_in + a_in * b_in)
    throw std::invalid_argument("sides " + a_in.to_string() + ", " + b_in.to_string() + ", " + c.to_string() +
                                " violate c^2 = a^2 + b^2 + ab");
  TileShape t;
  t.a = a_in;
  t.b = b_in;
  if (order == SideOrder::Canonical && t.a > t.b) std::swap(t.a, t.b);
  t.c = c;
  const QRoot3 two_c = QRoot3(2) * c;
  // With the 120 degree law of cosines these reduce to (a + 2b)/2c and (2a + b)/2c.
  t.cos_alpha = (t.b * t.b + c * c - t.a * t.a) / (two_c * t.b);
  t.cos_beta = (t.a * t.a + c * c - t.b * t.b) / (two_c * t.a);
  t.area = t.a * t.b * QRoot3::sqrt3() / QRoot3(4);
  return t;
}

EisensteinTriple eisenstein_triple(long m, long n) {
  if (n < 1 || m <= n) throw std::invalid_argument("eisenstein_triple needs m > n >= 1");
  return {m * m - n * n, 2 * m * n + n * n, m * m + m * n + n * n};
}

bool EdgeRelation::holds(const TileShape& t) const {
  const QRoot3 J(j), U(u), V(v);
  switch (kind) {
    case Kind::BSide: return J * t.b == U * t.a + V * t.c;
    case Kind::ASide: return J * t.a == U * t.b + V * t.c;
    case Kind::CSide: return J * t.c == U * t.a + V * t.b;
  }
  return false;
}

EdgeRelation EdgeRelation::canonical() const {
  const long g = std::gcd(std::gcd(j, u), v);
  if (g <= 1) return *this;
  return {kind, j / g, u / g, v / g};
}

const char* kind_name(EdgeRelation::Kind k) {
  switch (k) {
    case EdgeRelation::Kind::BSide: return "B_SIDE";
    case EdgeRelation::Kind::ASide: return "A_SIDE";
    case EdgeRelation::Kind::CSide: return "C_SIDE";
  }
  return "?";
}

EdgeRelation::Kind kind_from_name(const std::string& s) {
  if (s == "B_SIDE") return EdgeRelation::Kind::BSide;
  if (s == "A_SIDE") return EdgeRelation::Kind::ASide;
  if (s == "C_SIDE") return EdgeRelation::Kind::CSide;
  throw std::invalid_argument("unknown relation kind: " + s);
}

std::string EdgeRelation::to_string() const {
  const char* lhs = kind == Kind::BSide ? "b" : (kind == Kind::ASide ? "a" : "c");
  const char* first = kind == Kind::ASide ? "b" : "a";
  const char* second = kind == Kind::CSide ? "b" : "c";
  auto term = [](long k, const char* s) {
    return k == 1 ? std::string(s) : std::to_string(k) + s;
  };
  std::string rhs;
  if (u != 0) rhs = term(u, first);
  if (v != 0) rhs += (rhs.empty() ? "" : " + ") + term(v, second);
  if (rhs.empty()) rhs = "0";
  return term(j, lhs) + " = " + rhs;
}

double QuadraticSurd::to_double() const {
  return p.to_double() + q.to_double() * std::sqrt(disc.to_double());
}

bool QuadraticSurd::satisfies_quadratic() const {
  // x = p + q sqrt(D): x^2 = p^2 + q^2 D + 2pq sqrt(D).
  const Rational rat = qa * (p * p + q * q * disc) + qb * p + qc;
  const Rational irr = qa * Rational(2) * p * q + qb * q;
  return rat.is_zero() && irr.is_zero();
}

std::string QuadraticSurd::to_string() const {
  return p.to_pretty() + " + " + q.to_pretty() + "*sqrt(" + disc.to_pretty() + ")";
}

namespace {

ShapeRoot make_root(const Rational& qa, const Rational& qb, const Rational& qc) {
  const Rational disc = qb * qb - Rational(4) * qa * qc;
  ShapeRoot out;
  out.surd = {qa, qb, qc, -qb / (Rational(2) * qa), (Rational(2) * qa).inverse(), disc};
  if (auto s = disc.sqrt_exact()) {
    out.exact = QRoot3((-qb + *s) / (Rational(2) * qa));
  } else if (auto s3 = (disc / Rational(3)).sqrt_exact()) {
    out.exact = QRoot3(-qb / (Rational(2) * qa), *s3 / (Rational(2) * qa));
  }
  return out;
}

// Root in (0,1) of x^2 (1 + l + l^2) + (2l + 1) m x + (m^2 - 1) = 0.
ShapeRoot shape_root(const Rational& lambda, const Rational& mu) {
  if (lambda.sign() < 0 || mu.sign() < 0) throw std::invalid_argument("lambda and mu must be nonnegative");
  if (lambda.is_zero() && mu.is_zero()) throw std::invalid_argument("lambda and mu cannot both vanish");
  const Rational qa = Rational(1) + lambda + lambda * lambda;
  const Rational qb = (Rational(2) * lambda + Rational(1)) * mu;
  const Rational qc = mu * mu - Rational(1);
  // qa > 0 and qb >= 0, so a positive root exists iff qc < 0, and it is unique.
  if (qc.sign() >= 0) throw std::domain_error("no valid shape");
  ShapeRoot r = make_root(qa, qb, qc);
  const double approx = r.to_double();
  if (r.exact ? (r.exact->sign() <= 0 || *r.exact >= QRoot3(1)) : !(approx > 0 && approx < 1))
    throw std::domain_error("no valid shape");
  return r;
}

// lambda * root + mu as a ShapeRoot.
ShapeRoot affine(const ShapeRoot& x, const Rational& lambda, const Rational& mu) {
  ShapeRoot out;
  const Rational p = lambda * x.surd.p + mu;
  const Rational q = lambda * x.surd.q;
  out.surd = {1, Rational(-2) * p, p * p - q * q * x.surd.disc, p, q, x.surd.disc};
  if (x.exact) out.exact = QRoot3(lambda) * *x.exact + QRoot3(mu);
  return out;
}

bool in_unit_interval(const ShapeRoot& r) {
  if (r.exact) return r.exact->sign() > 0 && *r.exact < QRoot3(1);
  const double d = r.to_double();
  return d > 0 && d < 1;
}

}  // namespace

ShapeRoot shape_from_relation(const Rational& lambda, const Rational& mu) { return shape_root(lambda, mu); }

ShapeRatios shape_from_relation(const EdgeRelation& rel) {
  const Rational l = rel.lambda(), m = rel.mu();
  ShapeRatios out;
  switch (rel.kind) {
    case EdgeRelation::Kind::BSide:
      out.a_over_c = shape_root(l, m);
      out.b_over_c = affine(out.a_over_c, l, m);
      break;
    case EdgeRelation::Kind::ASide:
      out.b_over_c = shape_root(l, m);
      out.a_over_c = affine(out.b_over_c, l, m);
      break;
    case EdgeRelation::Kind::CSide:
      throw std::invalid_argument("c-side relations do not determine a unique shape");
  }
  if (!in_unit_interval(out.a_over_c) || !in_unit_interval(out.b_over_c))
    throw std::domain_error("no valid shape");
  return out;
}

namespace {

// Integer sides proportional to a rational tile, if they fit in a long.
std::optional<std::array<long, 3>> integer_sides(const TileShape& t) {
  if (!t.a.is_rational() || !t.b.is_rational() || !t.c.is_rational()) return std::nullopt;
  mpz_class l = 1;
  for (const auto* x : {&t.a, &t.b, &t.c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->r().den().get_mpz_t());
  std::array<long, 3> out{};
  std::size_t i = 0;
  for (const auto* x : {&t.a, &t.b, &t.c}) {
    const mpz_class v = x->r().num() * (l / x->r().den());
    if (!v.fits_slong_p() || v > 1000000000L) return std::nullopt;
    out[i++] = v.get_si();
  }
  return out;
}

}  // namespace

std::vector<EdgeRelation> relations_of_tile(const TileShape& t, long max_j) {
  std::vector<EdgeRelation> out;
  if (auto s = integer_sides(t)) {
    const auto [A, B, C] = *s;
    auto scan_int = [&](EdgeRelation::Kind kind, long lhs, long first, long second) {
      for (long j = 1; j <= max_j; ++j) {
        const long total = j * lhs;
        for (long u = 0; u * first <= total; ++u) {
          const long rest = total - u * first;
          if (rest % second != 0) continue;
          const long v = rest / second;
          if (std::gcd(std::gcd(j, u), v) == 1) out.push_back({kind, j, u, v});
        }
      }
    };
    scan_int(EdgeRelation::Kind::BSide, B, A, C);
    scan_int(EdgeRelation::Kind::ASide, A, B, C);
    scan_int(EdgeRelation::Kind::CSide, C, A, B);
    return out;
  }
  // For kind K: lhs * j = first * u + second * v, solve v for each (j, u).
  auto scan = [&](EdgeRelation::Kind kind, const QRoot3& lhs, const QRoot3& first, const QRoot3& second) {
    for (long j = 1; j <= max_j; ++j) {
      const QRoot3 total = QRoot3(j) * lhs;
      const long max_u = (total / first).floor().get_si();
      for (long u = 0; u <= max_u; ++u) {
        const QRoot3 v = (total - QRoot3(u) * first) / second;
        if (!v.is_rational() || !v.r().is_integer()) continue;
        const EdgeRelation rel{kind, j, u, v.r().num().get_si()};
        if (std::gcd(std::gcd(j, u), rel.v) == 1) out.push_back(rel);
      }
    }
  };
  scan(EdgeRelation::Kind::BSide, t.b, t.a, t.c);
  scan(EdgeRelation::Kind::ASide, t.a, t.b, t.c);
  scan(EdgeRelation::Kind::CSide, t.c, t.a, t.b);
  return out;
}

std::vector<EdgeRelation> relation_from_shape(const Rational& x, long max_j) {
  if (x.sign() <= 0 || x >= Rational(1)) throw std::invalid_argument("a/c must lie in (0,1)");
  // With c = 1: b^2 + x b + x^2 - 1 = 0, so b = (-x + sqrt(4 - 3x^2)) / 2.
  const Rational disc = Rational(4) - Rational(3) * x * x;
  std::optional<QRoot3> b;
  if (auto s = disc.sqrt_exact()) b = QRoot3((-x + *s) / Rational(2));
  else if (auto s3 = (disc / Rational(3)).sqrt_exact()) b = QRoot3(-x / Rational(2), *s3 / Rational(2));
  if (b) {
    const TileShape t = tile_from_sides(QRoot3(x), *b, QRoot3(1), SideOrder::AsGiven);
    return relations_of_tile(t, max_j);
  }
  // b lies outside Q(sqrt3): only relations without a b term can hold.
  std::vector<EdgeRelation> out;
  for (long j = 1; j <= max_j; ++j) {
    const Rational v = Rational(j) * x;  // j a = v c
    if (v.is_integer() && std::gcd(j, v.num().get_si()) == 1)
      out.push_back({EdgeRelation::Kind::ASide, j, 0, v.num().get_si()});
    const Rational u = Rational(j) / x;  // j c = u a
    if (u.is_integer() && std::gcd(j, u.num().get_si()) == 1)
      out.push_back({EdgeRelation::Kind::CSide, j, u.num().get_si(), 0});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational cos_ratio(const TileShape& t) {
  const QRoot3 ratio = (t.a + QRoot3(2) * t.b) / (QRoot3(2) * t.a + t.b);
  if (ratio != t.cos_alpha / t.cos_beta) throw std::logic_error("cosine ratio identity failed");
  if (!ratio.is_rational()) throw std::domain_error("cosine ratio is irrational");
  return ratio.r();
}

TileClass classify_tile(const TileShape& t) {
  TileClass out{};
  out.integer_similar = (t.a / t.c).is_rational() && (t.b / t.c).is_rational();
  out.alpha_over_pi = niven_classify(t.cos_alpha);
  out.alpha_rational_multiple_of_pi = out.alpha_over_pi.has_value();
  out.decided = true;
  return out;
}

void to_json(nlohmann::json& j, const TileShape& t) { j = {{"a", t.a}, {"b", t.b}, {"c", t.c}}; }

void from_json(const nlohmann::json& j, TileShape& t) {
  t = tile_from_sides(j.at("a").get<QRoot3>(), j.at("b").get<QRoot3>(), j.at("c").get<QRoot3>(),
                      SideOrder::AsGiven);
}

void to_json(nlohmann::json& j, const EdgeRelation& r) {
  j = {{"kind", kind_name(r.kind)}, {"j", r.j}, {"u", r.u}, {"v", r.v}, {"text", r.to_string()}};
}

}  // namespace tforge
