#pragma once

#include <map>
#include <string>
#include <vector>

#include "saep/types.hpp"

namespace saep {

// polls CSV: header `state,pollster,candidate,pct,sample_size`.
// pct is a percentage in the open interval (0,100); sample_size may be empty
// except for year 2024, where the bootstrap needs it.
std::vector<PollObservation> load_polls(const std::string& path, int year);

// outcomes CSV: header `state,dem_pct,rep_pct`. One row per state, both
// shares strictly positive, dem+rep <= 100 after normalization.
std::vector<ElectionOutcome> load_outcomes(const std::string& path, int year);

// state metadata CSV: header `state,ec_votes,swing` (swing in {0,1}).
std::vector<StateMeta> load_state_meta(const std::string& path);

void write_polls(const std::string& path, const std::vector<PollObservation>& polls,
                 const std::vector<std::string>& header_comments = {});
void write_outcomes(const std::string& path, const std::vector<ElectionOutcome>& outcomes,
                    const std::vector<std::string>& header_comments = {});

// Assigns purple to every state in swing_list and blue/red to the rest from
// the two outcome years. A state outside swing_list whose winner differs
// between the years is an error: it belongs in the swing list.
std::map<std::string, Leaning> classify_leaning(const std::vector<ElectionOutcome>& outcomes_a,
                                                const std::vector<ElectionOutcome>& outcomes_b,
                                                const std::vector<std::string>& swing_list);

// y = log(poll proportion) - log(realized share) per matched record.
std::vector<ResponseRecord> build_responses(const std::vector<PollObservation>& polls,
                                            const std::vector<ElectionOutcome>& outcomes);

// --- grouped views used by the predictors ---

struct StatePolls {
  std::vector<PollObservation> dem;
  std::vector<PollObservation> rep;
};

std::map<std::string, StatePolls> group_polls_by_state(const std::vector<PollObservation>& polls);

std::map<std::string, ElectionOutcome> outcomes_by_state(const std::vector<ElectionOutcome>& outcomes);

}  // namespace saep
