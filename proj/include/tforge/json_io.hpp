#ifndef TFORGE_JSON_IO_HPP
#define TFORGE_JSON_IO_HPP

#include "tforge/qroot3.hpp"
#include "tforge/rational.hpp"

#include <json.hpp>

namespace tforge {

// Rational as "p/q"; QRoot3 as {"r": "p/q", "s": "p/q"}.
void to_json(nlohmann::json& j, const Rational& x);
void from_json(const nlohmann::json& j, Rational& x);
void to_json(nlohmann::json& j, const QRoot3& x);
void from_json(const nlohmann::json& j, QRoot3& x);

}  // namespace tforge

#endif  // TFORGE_JSON_IO_HPP
