#ifndef TFORGE_MPOLY_HPP
#define TFORGE_MPOLY_HPP

#include "tforge/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace tforge {

// Sparse polynomial in a fixed number of variables with coefficients in a
// ring C.  Zero coefficients are never stored.
template <class C, std::size_t NVars>
class MPoly {
 public:
  using Exponents = std::array<int, NVars>;
  using Terms = std::map<Exponents, C>;

  MPoly() = default;

  static MPoly constant(const C& c) {
    MPoly p;
    p.add_term(Exponents{}, c);
    return p;
  }
  static MPoly variable(std::size_t i, const C& one) {
    Exponents e{};
    e.at(i) = 1;
    MPoly p;
    p.add_term(e, one);
    return p;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Exponents& e, const C& c) {
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) it->second += c;
    if (is_zero_coeff(it->second)) t_.erase(it);
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        Exponents e{};
        for (std::size_t i = 0; i < NVars; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend MPoly operator*(const MPoly& a, const C& k) {
    MPoly out;
    for (const auto& [e, c] : a.t_) out.add_term(e, c * k);
    return out;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

 private:
  static bool is_zero_coeff(const C& c) { return c.is_zero(); }
  Terms t_;
};

// Six-variable rational polynomials in p, q, r, m, n, l, the letters used for
// boundary edge counts in the reduction checks.
inline constexpr std::array<char, 6> kEdgeVars{'p', 'q', 'r', 'm', 'n', 'l'};
using EdgePoly = MPoly<Rational, 6>;

// Parses sums like "-2mp + np + mq - 2nq - 3lr" over the letters above.
// Throws std::invalid_argument on anything else.
EdgePoly parse_edge_poly(std::string_view text);
std::string to_string(const EdgePoly& p);

}  // namespace tforge

#endif  // TFORGE_MPOLY_HPP
