#pragma once

#include <string>
#include <vector>

#include "daml/action_model.hpp"
#include "daml/parser.hpp"

namespace testing_util {

inline daml::DecisionPoint dp(const std::string& id, const std::string& owner,
                              const std::vector<std::pair<std::string, std::string>>& events,
                              const daml::ActionRegistry* known = nullptr) {
  daml::DecisionPoint d;
  d.id = id;
  d.owner = owner;
  daml::ParseEnv env{known, nullptr, true};
  for (const auto& [name, pre] : events) {
    d.events.push_back(name);
    d.pre.push_back(daml::parse(pre, env));
  }
  return d;
}

}  // namespace testing_util
