#pragma once

#include <string>
#include <vector>

#include "saep/types.hpp"

namespace saep {

// Flattened model inputs. Fixed-effect design is always [intercept,
// candidate_indicator]; the maps carry the random-effect incidence.
struct DesignMatrices {
  std::vector<double> y;
  std::vector<int> state;      // 0..n_states-1 per row
  std::vector<int> candidate;  // 0 Dem, 1 Rep
  std::vector<int> pollster;   // 0..n_pollsters-1 per row

  std::vector<std::string> state_codes;     // index -> code
  std::vector<std::string> pollster_names;  // index -> id

  std::size_t n() const { return y.size(); }
  int n_states() const { return static_cast<int>(state_codes.size()); }
  int n_pollsters() const { return static_cast<int>(pollster_names.size()); }

  int state_index(const std::string& code) const;      // -1 if absent
  int pollster_index(const std::string& name) const;   // -1 if absent
};

DesignMatrices build_design(const std::vector<ResponseRecord>& records);

}  // namespace saep
