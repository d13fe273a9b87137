#include "tforge/poly.hpp"

#include <stdexcept>

namespace tforge {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(Rational c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = std::move(c);
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool RatPoly::has_integer_coeffs() const {
  for (const auto& c : c_)
    if (!c.is_integer()) return false;
  return true;
}

std::complex<double> RatPoly::eval(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

Rational RatPoly::eval(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < divisor.degree()) return {RatPoly(), *this};
  std::vector<Rational> rem = c_;
  std::vector<Rational> quo(c_.size() - divisor.c_.size() + 1);
  const Rational inv_lead = divisor.lead().inverse();
  const std::size_t dd = divisor.c_.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Rational q = rem[k + dd] * inv_lead;
    quo[k] = q;
    if (q.is_zero()) continue;
    for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= q * divisor.c_[i];
  }
  rem.resize(dd);
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

std::string RatPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& c = c_[i];
    if (c.is_zero()) continue;
    const bool neg = c.sign() < 0;
    const Rational mag = c.abs();
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty()) out += mag.to_pretty();
    else if (mag == Rational(1)) out += mono;
    else out += mag.to_pretty() + "*" + mono;
  }
  return out;
}

RatPoly RatPoly::operator-() const {
  RatPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(out);
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const Rational& k) {
  for (auto& c : c_) c *= k;
  trim();
  return *this;
}

XgcdResult xgcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0{Rational(1)}, s1;
  RatPoly t0, t1{Rational(1)};
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::exchange(r1, std::move(r));
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Rational k = r0.lead().inverse();
  return {r0 * k, s0 * k, t0 * k};
}

}  // namespace tforge
