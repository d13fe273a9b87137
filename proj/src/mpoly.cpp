#include "tforge/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tforge {

namespace {

std::size_t var_index(char ch) {
  const auto it = std::find(kEdgeVars.begin(), kEdgeVars.end(), ch);
  if (it == kEdgeVars.end()) throw std::invalid_argument(std::string("unknown variable '") + ch + "'");
  return static_cast<std::size_t>(it - kEdgeVars.begin());
}

}  // namespace

EdgePoly parse_edge_poly(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  EdgePoly out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("expected '+' or '-' in polynomial: " + s);
    }
    long coef = 0;
    bool has_digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = coef * 10 + (s[i] - '0');
      has_digits = true;
      ++i;
    }
    if (!has_digits) coef = 1;
    EdgePoly::Exponents e{};
    bool has_vars = false;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      ++e[var_index(s[i])];
      has_vars = true;
      ++i;
    }
    if (!has_digits && !has_vars) throw std::invalid_argument("empty term in polynomial: " + s);
    out.add_term(e, Rational(sign * coef));
  }
  return out;
}

std::string to_string(const EdgePoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // Highest-degree, then variable order, for a stable rendering.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t v = 0; v < kEdgeVars.size(); ++v)
      for (int k = 0; k < e[v]; ++k) mono.push_back(kEdgeVars[v]);
    const bool neg = c.sign() < 0;
    const Rational mag = c.abs();
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (mono.empty() || mag != Rational(1)) out += mag.to_pretty();
    out += mono;
  }
  return out;
}

}  // namespace tforge
