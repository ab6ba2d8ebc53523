#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace saep {

enum class Candidate : int { Dem = 0, Rep = 1 };

inline const char* candidate_label(Candidate c) {
  return c == Candidate::Dem ? "DEM" : "REP";
}

enum class Leaning : int { Blue = 0, Red = 1, Purple = 2 };

inline const char* leaning_label(Leaning l) {
  switch (l) {
    case Leaning::Blue: return "blue";
    case Leaning::Red: return "red";
    default: return "purple";
  }
}

struct StateMeta {
  std::string state;  // 2-letter code
  int ec_votes = 0;
  bool swing = false;
  Leaning leaning = Leaning::Blue;  // filled by classify_leaning
  bool polled_2024 = true;
};

struct PollObservation {
  int year = 0;  // 2016, 2020 or 2024
  std::string state;
  std::string pollster;
  Candidate candidate = Candidate::Dem;
  double pct = 0.0;  // as parsed, in (0,100); proportion() = pct/100
  std::optional<std::int64_t> sample_size;

  double proportion() const { return pct / 100.0; }

  bool operator==(const PollObservation&) const = default;
};

struct ElectionOutcome {
  int year = 0;
  std::string state;
  double dem_pct = 0.0;  // as parsed, in (0,100)
  double rep_pct = 0.0;

  double dem_share() const { return dem_pct / 100.0; }
  double rep_share() const { return rep_pct / 100.0; }

  bool operator==(const ElectionOutcome&) const = default;
};

// One response y = log(poll proportion) - log(realized share) for a matched
// (year, state, candidate) pair.
struct ResponseRecord {
  int year = 0;
  std::string state;
  std::string pollster;
  Candidate candidate = Candidate::Dem;
  double y = 0.0;
  int candidate_indicator = 0;  // 1 iff Rep

  bool operator==(const ResponseRecord&) const = default;
};

constexpr int kTrainYears[2] = {2016, 2020};
constexpr int kPredictionYear = 2024;

}  // namespace saep
