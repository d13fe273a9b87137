#include "tforge/qroot3.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace tforge {

int qr3_sign(const QRoot3& x) {
  const int sr = x.r().sign();
  const int ss = x.s().sign();
  if (ss == 0) return sr;
  if (sr == 0) return ss;
  if (sr == ss) return sr;
  // Opposite signs: the term with the larger square wins.
  const Rational r2 = x.r() * x.r();
  const Rational s2 = Rational(3) * x.s() * x.s();
  if (r2 == s2) return 0;  // unreachable for sqrt(3) irrational, kept for totality
  return r2 > s2 ? sr : ss;
}

int QRoot3::sign() const { return qr3_sign(*this); }

double QRoot3::to_double() const { return r_.to_double() + s_.to_double() * std::sqrt(3.0); }

QRoot3& QRoot3::operator*=(const QRoot3& o) {
  Rational nr = r_ * o.r_ + Rational(3) * s_ * o.s_;
  Rational ns = r_ * o.s_ + s_ * o.r_;
  r_ = std::move(nr);
  s_ = std::move(ns);
  return *this;
}

QRoot3 QRoot3::inverse() const {
  const Rational n = norm();
  if (n.is_zero()) throw std::domain_error("inverse of zero in Q(sqrt3)");
  return {r_ / n, -s_ / n};
}

mpz_class QRoot3::floor() const {
  if (s_.is_zero()) return r_.floor();
  // Start from a floating estimate and correct with exact comparisons.
  mpz_class k(std::floor(to_double()));
  while (QRoot3(Rational(k)) > *this) --k;
  while (QRoot3(Rational(mpz_class(k + 1))) <= *this) ++k;
  return k;
}

std::optional<QRoot3> QRoot3::sqrt_exact() const {
  const int sg = sign();
  if (sg < 0) return std::nullopt;
  if (sg == 0) return QRoot3();
  // (x + y sqrt3)^2 = x^2 + 3y^2 + 2xy sqrt3.
  if (s_.is_zero()) {
    if (auto q = r_.sqrt_exact()) return QRoot3(*q);
    if (auto q = (r_ / Rational(3)).sqrt_exact()) return QRoot3(Rational(0), *q);
    return std::nullopt;
  }
  const auto disc = norm().sqrt_exact();
  if (!disc) return std::nullopt;
  for (const Rational& cand : {(r_ + *disc) / Rational(2), (r_ - *disc) / Rational(2)}) {
    auto x = cand.sqrt_exact();
    if (!x || x->is_zero()) continue;
    QRoot3 root(*x, s_ / (Rational(2) * *x));
    if (root.sign() < 0) root = -root;
    if (root * root == *this) return root;
  }
  return std::nullopt;
}

std::string QRoot3::to_string() const {
  if (s_.is_zero()) return r_.to_pretty();
  std::string sq = s_ == Rational(1) ? "sqrt3" : (s_ == Rational(-1) ? "-sqrt3" : s_.to_pretty() + "*sqrt3");
  if (r_.is_zero()) return sq;
  if (s_.sign() > 0) return r_.to_pretty() + "+" + sq;
  return r_.to_pretty() + sq;
}

namespace {

QRoot3 parse_term(std::string_view t, std::string_view whole) {
  auto fail = [&]() -> QRoot3 {
    throw std::invalid_argument("bad exact number: '" + std::string(whole) + "'");
  };
  if (t.empty()) return fail();
  const auto pos = t.find("sqrt3");
  if (pos == std::string_view::npos) return QRoot3(Rational::parse(t));
  std::string_view before = t.substr(0, pos);
  std::string_view after = t.substr(pos + 5);
  Rational coef(1);
  if (!before.empty()) {
    if (before.back() == '*') before.remove_suffix(1);
    if (before == "-") coef = Rational(-1);
    else if (before == "+") coef = Rational(1);
    else if (!before.empty()) coef = Rational::parse(before);
  }
  if (!after.empty()) {
    if (after[0] != '/') return fail();
    coef /= Rational::parse(after.substr(1));
  }
  return QRoot3(Rational(0), coef);
}

}  // namespace

QRoot3 QRoot3::parse(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  if (compact.empty()) throw std::invalid_argument("empty exact number");
  QRoot3 total;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= compact.size(); ++i) {
    const bool at_end = i == compact.size();
    if (at_end || ((compact[i] == '+' || compact[i] == '-') && compact[i - 1] != '*' &&
                   compact[i - 1] != '/')) {
      total += parse_term(std::string_view(compact).substr(start, i - start), text);
      start = i;
    }
  }
  return total;
}

}  // namespace tforge
