// Copyright 2026 The rptrend Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rptrend/event_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rptrend/error.hpp"

namespace rptrend {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw DataError("non-numeric field '" + std::string(field) + "'", line);
  }
  return v;
}

struct RawProcess {
  std::string id;
  std::vector<std::pair<double, std::size_t>> events;  // (time, line)
  std::optional<double> tau;
  std::size_t first_line = 0;
};

// Validates and sorts the raw rows of one process; errors carry the line of
// the offending row.
EventSeries build_series(RawProcess& raw) {
  if (!raw.tau) {
    throw DataError("censoring time missing for process '" + raw.id + "'",
                    raw.first_line);
  }
  const double tau = *raw.tau;
  std::stable_sort(raw.events.begin(), raw.events.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> times;
  times.reserve(raw.events.size());
  for (std::size_t i = 0; i < raw.events.size(); ++i) {
    const auto [t, line] = raw.events[i];
    if (t <= 0.0) {
      throw DataError("event time must be positive in process '" + raw.id + "'",
                      line);
    }
    if (t > tau) {
      throw DataError("event after censoring time in process '" + raw.id + "'",
                      line);
    }
    if (i > 0 && t == raw.events[i - 1].first) {
      throw DataError("duplicate event time " + format_double(t) +
                          " in process '" + raw.id + "'",
                      line);
    }
    times.push_back(t);
  }
  return EventSeries(std::move(times), tau);
}

MultiProcessData parse_long_csv(std::istream& in,
                                std::optional<double> default_tau) {
  std::vector<RawProcess> raws;
  std::map<std::string, std::size_t, std::less<>> index;
  auto lookup = [&](std::string_view id, std::size_t line) -> RawProcess& {
    auto it = index.find(id);
    if (it == index.end()) {
      it = index.emplace(std::string(id), raws.size()).first;
      raws.push_back(RawProcess{std::string(id), {}, std::nullopt, line});
    }
    return raws[it->second];
  };

  enum class Section { Header, Events, Censoring } section = Section::Header;
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const std::string_view line = trim(buffer);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (trim(line.substr(1)) == "censoring") {
        if (section == Section::Header) {
          throw DataError("missing header 'process_id,event_time'", line_no);
        }
        section = Section::Censoring;
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos) {
      throw DataError("expected two comma-separated fields", line_no);
    }
    const std::string_view first = trim(line.substr(0, comma));
    const std::string_view second = trim(line.substr(comma + 1));
    switch (section) {
      case Section::Header:
        if (first != "process_id" || second != "event_time") {
          throw DataError("missing header 'process_id,event_time'", line_no);
        }
        section = Section::Events;
        break;
      case Section::Events: {
        if (first.empty()) throw DataError("empty process_id", line_no);
        const double t = parse_number(second, line_no);
        lookup(first, line_no).events.emplace_back(t, line_no);
        break;
      }
      case Section::Censoring: {
        if (first == "process_id" && second == "tau") break;
        if (first.empty()) throw DataError("empty process_id", line_no);
        const double tau = parse_number(second, line_no);
        if (tau <= 0.0) {
          throw DataError("censoring time must be positive", line_no);
        }
        RawProcess& raw = lookup(first, line_no);
        if (raw.tau) {
          throw DataError("duplicate censoring time for process '" + raw.id +
                              "'",
                          line_no);
        }
        raw.tau = tau;
        break;
      }
    }
  }
  if (section == Section::Header) {
    throw DataError("missing header 'process_id,event_time'");
  }
  if (default_tau && *default_tau <= 0.0) {
    throw DataError("censoring time must be positive");
  }

  std::vector<Process> processes;
  processes.reserve(raws.size());
  for (auto& raw : raws) {
    if (!raw.tau) raw.tau = default_tau;
    processes.push_back(Process{raw.id, build_series(raw)});
  }
  if (processes.empty()) throw DataError("no processes in input");
  return MultiProcessData(std::move(processes));
}

MultiProcessData parse_json(std::istream& in, std::optional<double> default_tau) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("processes") ||
      !doc["processes"].is_array()) {
    throw DataError("JSON input must be an object with a 'processes' array");
  }
  std::vector<Process> processes;
  std::size_t k = 0;
  for (const auto& p : doc["processes"]) {
    ++k;
    const std::string where = "process #" + std::to_string(k);
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string()) {
      throw DataError(where + ": missing string 'id'");
    }
    RawProcess raw{p["id"].get<std::string>(), {}, default_tau, 0};
    if (p.contains("tau")) {
      if (!p["tau"].is_number()) throw DataError(where + ": non-numeric 'tau'");
      raw.tau = p["tau"].get<double>();
      if (!(*raw.tau > 0.0) || !std::isfinite(*raw.tau)) {
        throw DataError(where + ": censoring time must be positive");
      }
    }
    if (!p.contains("events") || !p["events"].is_array()) {
      throw DataError(where + ": missing 'events' array");
    }
    for (const auto& e : p["events"]) {
      if (!e.is_number()) throw DataError(where + ": non-numeric event time");
      raw.events.emplace_back(e.get<double>(), 0);
    }
    try {
      processes.push_back(Process{raw.id, build_series(raw)});
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  if (processes.empty()) throw DataError("no processes in input");
  return MultiProcessData(std::move(processes));
}

constexpr double kLhdTimes[] = {
    16,   39,   71,   95,   98,   110,  114,  226,  294,  344,  555,  599,
    757,  822,  963,  1077, 1167, 1202, 1257, 1317, 1345, 1372, 1402, 1536,
    1625, 1643, 1675, 1726, 1736, 1772, 1796, 1799, 1814, 1868, 1894, 1970};
constexpr double kLhdTau = 2000.0;

}  // namespace

EventSeries::EventSeries(std::vector<double> event_times, double censoring_time)
    : times_(std::move(event_times)), tau_(censoring_time) {
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
    throw DataError("censoring time must be positive and finite");
  }
  double prev = 0.0;
  for (double t : times_) {
    if (!std::isfinite(t) || t <= prev) {
      throw DataError(t == prev && prev > 0.0
                          ? "duplicate event time " + format_double(t)
                          : "event times must be positive and strictly "
                            "increasing");
    }
    prev = t;
  }
  if (prev > tau_) throw DataError("event after censoring time");
}

Gaps interevent_times(const EventSeries& series) {
  Gaps gaps;
  gaps.complete.reserve(series.size());
  double prev = 0.0;
  for (double t : series.times()) {
    gaps.complete.push_back(t - prev);
    prev = t;
  }
  gaps.remainder = series.tau() - prev;
  return gaps;
}

EventSeries series_from_gaps(std::span<const double> gaps, double tau) {
  std::vector<double> times;
  times.reserve(gaps.size());
  double t = 0.0;
  for (double x : gaps) {
    t += x;
    times.push_back(t);
  }
  // Rounding in the cumulative sum may overshoot tau by an ulp or two.
  if (!times.empty() && times.back() > tau && times.back() - tau <= 1e-9 * tau) {
    times.back() = tau;
  }
  return EventSeries(std::move(times), tau);
}

MultiProcessData::MultiProcessData(std::vector<Process> processes)
    : processes_(std::move(processes)) {
  if (processes_.empty()) throw DataError("at least one process is required");
  std::unordered_set<std::string> seen;
  for (const auto& p : processes_) {
    if (!seen.insert(p.id).second) {
      throw DataError("duplicate process id '" + p.id + "'");
    }
  }
}

MultiProcessData::MultiProcessData(std::string id, EventSeries series)
    : MultiProcessData(
          std::vector<Process>{Process{std::move(id), std::move(series)}}) {}

const Process* MultiProcessData::find(std::string_view id) const {
  for (const auto& p : processes_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::size_t MultiProcessData::total_events() const noexcept {
  std::size_t n = 0;
  for (const auto& p : processes_) n += p.series.size();
  return n;
}

MultiProcessData parse_events(std::istream& in, DataFormat format,
                              std::optional<double> default_tau) {
  return format == DataFormat::Json ? parse_json(in, default_tau)
                                    : parse_long_csv(in, default_tau);
}

MultiProcessData parse_events(std::string_view text, DataFormat format,
                              std::optional<double> default_tau) {
  std::istringstream in{std::string(text)};
  return parse_events(in, format, default_tau);
}

DataFormat format_from_path(std::string_view path) {
  return path.ends_with(".json") ? DataFormat::Json : DataFormat::LongCsv;
}

MultiProcessData load_events(const std::string& path,
                             std::optional<double> default_tau) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_events(in, format_from_path(path), default_tau);
}

void write_long_csv(std::ostream& out, const MultiProcessData& data) {
  out << "process_id,event_time\n";
  for (const auto& p : data.processes()) {
    for (double t : p.series.times()) {
      out << p.id << ',' << format_double(t) << '\n';
    }
  }
  out << "#censoring\nprocess_id,tau\n";
  for (const auto& p : data.processes()) {
    out << p.id << ',' << format_double(p.series.tau()) << '\n';
  }
}

void write_json(std::ostream& out, const MultiProcessData& data) {
  nlohmann::json doc;
  doc["processes"] = nlohmann::json::array();
  for (const auto& p : data.processes()) {
    doc["processes"].push_back(
        {{"id", p.id},
         {"tau", p.series.tau()},
         {"events", std::vector<double>(p.series.times().begin(),
                                        p.series.times().end())}});
  }
  out << doc.dump(2) << '\n';
}

std::string to_long_csv(const MultiProcessData& data) {
  std::ostringstream out;
  write_long_csv(out, data);
  return out.str();
}

std::string to_json(const MultiProcessData& data) {
  std::ostringstream out;
  write_json(out, data);
  return out.str();
}

std::vector<std::string> bundled_dataset_ids() { return {"lhd"}; }

MultiProcessData bundled_dataset(std::string_view id) {
  if (id == "lhd") return MultiProcessData("lhd", lhd_series());
  throw DataError("unknown bundled dataset '" + std::string(id) + "'");
}

EventSeries lhd_series() {
  return EventSeries(std::vector<double>(std::begin(kLhdTimes), std::end(kLhdTimes)),
                     kLhdTau);
}

}  // namespace rptrend
