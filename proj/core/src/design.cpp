#include "saep/design.hpp"

#include <map>

#include "saep/error.hpp"

namespace saep {

int DesignMatrices::state_index(const std::string& code) const {
  for (std::size_t i = 0; i < state_codes.size(); ++i) {
    if (state_codes[i] == code) return static_cast<int>(i);
  }
  return -1;
}

int DesignMatrices::pollster_index(const std::string& name) const {
  for (std::size_t i = 0; i < pollster_names.size(); ++i) {
    if (pollster_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

DesignMatrices build_design(const std::vector<ResponseRecord>& records) {
  if (records.empty()) throw Error("build_design: no response records");
  DesignMatrices d;
  std::map<std::string, int> states;
  std::map<std::string, int> pollsters;
  for (const auto& r : records) {
    if (!states.count(r.state)) {
      states[r.state] = static_cast<int>(d.state_codes.size());
      d.state_codes.push_back(r.state);
    }
    if (!pollsters.count(r.pollster)) {
      pollsters[r.pollster] = static_cast<int>(d.pollster_names.size());
      d.pollster_names.push_back(r.pollster);
    }
  }
  d.y.reserve(records.size());
  for (const auto& r : records) {
    d.y.push_back(r.y);
    d.state.push_back(states[r.state]);
    d.candidate.push_back(r.candidate_indicator);
    d.pollster.push_back(pollsters[r.pollster]);
  }
  return d;
}

}  // namespace saep
