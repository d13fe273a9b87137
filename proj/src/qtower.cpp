#include "tforge/qtower.hpp"

#include <cmath>
#include <stdexcept>

namespace tforge {

bool QTower::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

QRoot3 QTower::to_qroot3() const {
  if (!in_qroot3()) throw std::domain_error("element not in Q(sqrt3): " + to_string());
  return {c_[0], c_[2]};
}

double QTower::to_double() const {
  return c_[0].to_double() + c_[1].to_double() * std::sqrt(2.0) + c_[2].to_double() * std::sqrt(3.0) +
         c_[3].to_double() * std::sqrt(6.0);
}

QTower QTower::conj(bool flip2, bool flip3) const {
  QTower out = *this;
  if (flip2) out.c_[1] = -out.c_[1];
  if (flip3) out.c_[2] = -out.c_[2];
  if (flip2 != flip3) out.c_[3] = -out.c_[3];
  return out;
}

Rational QTower::norm() const {
  const QTower prod = *this * conj(true, false) * conj(false, true) * conj(true, true);
  if (!prod.is_rational()) throw std::logic_error("tower norm not rational");
  return prod.c_[0];
}

QTower QTower::inverse() const {
  const Rational n = norm();
  if (n.is_zero()) throw std::domain_error("inverse of zero in Q(sqrt2,sqrt3)");
  QTower adj = conj(true, false) * conj(false, true) * conj(true, true);
  for (auto& c : adj.c_) c /= n;
  return adj;
}

QTower& QTower::operator+=(const QTower& o) {
  for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

QTower& QTower::operator-=(const QTower& o) {
  for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

QTower& QTower::operator*=(const QTower& o) {
  const auto& [a0, a1, a2, a3] = c_;
  const auto& [b0, b1, b2, b3] = o.c_;
  // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2.
  Rational r0 = a0 * b0 + Rational(2) * a1 * b1 + Rational(3) * a2 * b2 + Rational(6) * a3 * b3;
  Rational r1 = a0 * b1 + a1 * b0 + Rational(3) * (a2 * b3 + a3 * b2);
  Rational r2 = a0 * b2 + a2 * b0 + Rational(2) * (a1 * b3 + a3 * b1);
  Rational r3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
  c_ = {std::move(r0), std::move(r1), std::move(r2), std::move(r3)};
  return *this;
}

std::string QTower::to_string() const {
  static const char* const names[] = {"", "*sqrt2", "*sqrt3", "*sqrt6"};
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (c_[i].is_zero()) continue;
    std::string term = c_[i].to_pretty() + names[i];
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace tforge
