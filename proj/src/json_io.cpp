#include "tforge/json_io.hpp"

#include <stdexcept>

namespace tforge {

void to_json(nlohmann::json& j, const Rational& x) { j = x.to_string(); }

void from_json(const nlohmann::json& j, Rational& x) {
  if (j.is_number_integer()) {
    x = Rational(j.get<long>());
    return;
  }
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
  x = Rational::parse(j.get<std::string>());
}

void to_json(nlohmann::json& j, const QRoot3& x) { j = {{"r", x.r()}, {"s", x.s()}}; }

void from_json(const nlohmann::json& j, QRoot3& x) {
  if (!j.is_object() || !j.contains("r") || !j.contains("s"))
    throw std::invalid_argument("QRoot3 must be an object with \"r\" and \"s\"");
  x = QRoot3(j.at("r").get<Rational>(), j.at("s").get<Rational>());
}

}  // namespace tforge
