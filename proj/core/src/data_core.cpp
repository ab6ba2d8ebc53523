#include "saep/data_core.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "saep/csv.hpp"
#include "saep/error.hpp"

namespace saep {

namespace {

std::string loc(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

void check_year(int year) {
  if (year != 2016 && year != 2020 && year != 2024) {
    throw Error("unsupported year " + std::to_string(year));
  }
}

}  // namespace

std::vector<PollObservation> load_polls(const std::string& path, int year) {
  check_year(year);
  auto table = csv::read_file(path, {"state", "pollster", "candidate", "pct", "sample_size"});
  std::vector<PollObservation> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    PollObservation p;
    p.year = year;
    p.state = row.fields[0];
    p.pollster = row.fields[1];
    if (p.state.empty()) throw Error(loc(path, row.line) + ": empty state code");
    if (p.pollster.empty()) throw Error(loc(path, row.line) + ": empty pollster id");
    const std::string& cand = row.fields[2];
    if (cand == "DEM") {
      p.candidate = Candidate::Dem;
    } else if (cand == "REP") {
      p.candidate = Candidate::Rep;
    } else {
      throw Error(loc(path, row.line) + ": candidate must be DEM or REP, got '" + cand + "'");
    }
    p.pct = csv::parse_double(row.fields[3], path, row.line, "pct");
    if (!(p.pct > 0.0 && p.pct < 100.0)) {
      throw Error(loc(path, row.line) + ": pct must lie strictly in (0,100), got " +
                  row.fields[3]);
    }
    if (!row.fields[4].empty()) {
      auto n = csv::parse_int(row.fields[4], path, row.line, "sample_size");
      if (n <= 0) throw Error(loc(path, row.line) + ": sample_size must be positive");
      p.sample_size = n;
    } else if (year == 2024) {
      throw Error(loc(path, row.line) + ": sample_size is required for 2024 polls");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ElectionOutcome> load_outcomes(const std::string& path, int year) {
  check_year(year);
  auto table = csv::read_file(path, {"state", "dem_pct", "rep_pct"});
  std::vector<ElectionOutcome> out;
  std::set<std::string> seen;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    ElectionOutcome o;
    o.year = year;
    o.state = row.fields[0];
    if (o.state.empty()) throw Error(loc(path, row.line) + ": empty state code");
    if (!seen.insert(o.state).second) {
      throw Error(loc(path, row.line) + ": duplicate state " + o.state);
    }
    o.dem_pct = csv::parse_double(row.fields[1], path, row.line, "dem_pct");
    o.rep_pct = csv::parse_double(row.fields[2], path, row.line, "rep_pct");
    if (o.dem_pct <= 0.0 || o.rep_pct <= 0.0) {
      throw Error(loc(path, row.line) + ": both shares must be strictly positive");
    }
    if (o.dem_pct + o.rep_pct > 100.0) {
      throw Error(loc(path, row.line) + ": dem+rep exceeds 100% for " + o.state);
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<StateMeta> load_state_meta(const std::string& path) {
  auto table = csv::read_file(path, {"state", "ec_votes", "swing"});
  std::vector<StateMeta> out;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    StateMeta m;
    m.state = row.fields[0];
    if (m.state.empty()) throw Error(loc(path, row.line) + ": empty state code");
    if (!seen.insert(m.state).second) {
      throw Error(loc(path, row.line) + ": duplicate state " + m.state);
    }
    auto ec = csv::parse_int(row.fields[1], path, row.line, "ec_votes");
    if (ec < 1) throw Error(loc(path, row.line) + ": ec_votes must be >= 1");
    m.ec_votes = static_cast<int>(ec);
    const std::string& swing = row.fields[2];
    if (swing == "1") {
      m.swing = true;
    } else if (swing == "0") {
      m.swing = false;
    } else {
      throw Error(loc(path, row.line) + ": swing must be 0 or 1");
    }
    out.push_back(std::move(m));
  }
  return out;
}

void write_polls(const std::string& path, const std::vector<PollObservation>& polls,
                 const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot open for writing");
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "state,pollster,candidate,pct,sample_size\n";
  for (const auto& p : polls) {
    out << p.state << ',' << p.pollster << ',' << candidate_label(p.candidate) << ','
        << csv::exact(p.pct) << ','
        << (p.sample_size ? std::to_string(*p.sample_size) : std::string()) << "\n";
  }
  if (!out) throw Error(path + ": write failed");
}

void write_outcomes(const std::string& path, const std::vector<ElectionOutcome>& outcomes,
                    const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot open for writing");
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "state,dem_pct,rep_pct\n";
  for (const auto& o : outcomes) {
    out << o.state << ',' << csv::exact(o.dem_pct) << ',' << csv::exact(o.rep_pct) << "\n";
  }
  if (!out) throw Error(path + ": write failed");
}

std::map<std::string, Leaning> classify_leaning(const std::vector<ElectionOutcome>& outcomes_a,
                                                const std::vector<ElectionOutcome>& outcomes_b,
                                                const std::vector<std::string>& swing_list) {
  if (swing_list.empty()) throw Error("classify_leaning: swing list is empty");
  auto a = outcomes_by_state(outcomes_a);
  auto b = outcomes_by_state(outcomes_b);
  std::set<std::string> states;
  for (const auto& [s, _] : a) states.insert(s);
  for (const auto& [s, _] : b) states.insert(s);
  std::set<std::string> swing(swing_list.begin(), swing_list.end());

  std::map<std::string, Leaning> out;
  for (const auto& s : states) {
    auto ia = a.find(s);
    auto ib = b.find(s);
    if (ia == a.end()) throw Error("classify_leaning: state " + s + " missing from first outcomes list");
    if (ib == b.end()) throw Error("classify_leaning: state " + s + " missing from second outcomes list");
    if (swing.count(s)) {
      out[s] = Leaning::Purple;
      continue;
    }
    const bool dem_a = ia->second.dem_pct > ia->second.rep_pct;
    const bool dem_b = ib->second.dem_pct > ib->second.rep_pct;
    const bool tie = ia->second.dem_pct == ia->second.rep_pct ||
                     ib->second.dem_pct == ib->second.rep_pct;
    if (tie || dem_a != dem_b) {
      throw Error("classify_leaning: state " + s +
                  " flipped (or tied) between the two years but is not in the swing list");
    }
    out[s] = dem_a ? Leaning::Blue : Leaning::Red;
  }
  return out;
}

std::vector<ResponseRecord> build_responses(const std::vector<PollObservation>& polls,
                                            const std::vector<ElectionOutcome>& outcomes) {
  // index outcomes by (year, state)
  std::map<std::pair<int, std::string>, const ElectionOutcome*> idx;
  for (const auto& o : outcomes) idx[{o.year, o.state}] = &o;

  std::vector<ResponseRecord> out;
  out.reserve(polls.size());
  for (const auto& p : polls) {
    auto it = idx.find({p.year, p.state});
    if (it == idx.end()) {
      throw Error("build_responses: no outcome for (" + std::to_string(p.year) + ", " +
                  p.state + ", " + candidate_label(p.candidate) + ")");
    }
    const double share = p.candidate == Candidate::Dem ? it->second->dem_share()
                                                       : it->second->rep_share();
    ResponseRecord r;
    r.year = p.year;
    r.state = p.state;
    r.pollster = p.pollster;
    r.candidate = p.candidate;
    r.y = std::log(p.proportion()) - std::log(share);
    r.candidate_indicator = p.candidate == Candidate::Rep ? 1 : 0;
    out.push_back(std::move(r));
  }
  return out;
}

std::map<std::string, StatePolls> group_polls_by_state(const std::vector<PollObservation>& polls) {
  std::map<std::string, StatePolls> out;
  for (const auto& p : polls) {
    auto& g = out[p.state];
    (p.candidate == Candidate::Dem ? g.dem : g.rep).push_back(p);
  }
  return out;
}

std::map<std::string, ElectionOutcome> outcomes_by_state(const std::vector<ElectionOutcome>& outcomes) {
  std::map<std::string, ElectionOutcome> out;
  for (const auto& o : outcomes) out[o.state] = o;
  return out;
}

}  // namespace saep
