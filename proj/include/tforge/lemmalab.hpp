#ifndef TFORGE_LEMMALAB_HPP
#define TFORGE_LEMMALAB_HPP

#include "tforge/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tforge {

struct LemmaCheck {
  std::string id;
  bool pass = false;
  nlohmann::json details;
};

LemmaCheck verify_norm_table_15();
LemmaCheck verify_norm_table_9();
LemmaCheck verify_minpoly_pi12();
LemmaCheck verify_area_pi12();
LemmaCheck verify_reduction_alpha();
LemmaCheck verify_reduction_beta();
LemmaCheck verify_sigma_actions();
LemmaCheck verify_simpletrig(const std::vector<Rational>& samples);
LemmaCheck verify_prime_splitting_facts();

// Registered check ids in suite order.
const std::vector<std::string>& lemma_ids();

// Runs the named checks (all when ids is empty) in suite order.  Throws
// std::invalid_argument naming the first unknown id.
std::vector<LemmaCheck> run_lemma_checks(const std::vector<std::string>& ids = {});

void to_json(nlohmann::json& j, const LemmaCheck& c);

}  // namespace tforge

#endif  // TFORGE_LEMMALAB_HPP
