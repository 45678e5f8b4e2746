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

// Time-censored recurrent event data: one or more processes observed on
// (0, tau], each with its own censoring time.

#ifndef RPTREND_EVENT_DATA_HPP_
#define RPTREND_EVENT_DATA_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rptrend {

// Event times 0 < T_1 < ... < T_n <= tau of one process, censored at tau.
// Immutable once constructed; the constructor enforces the invariants and
// throws DataError on violation.
class EventSeries {
 public:
  EventSeries(std::vector<double> event_times, double censoring_time);

  std::span<const double> times() const noexcept { return times_; }
  double tau() const noexcept { return tau_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  // T_{N(tau)}, or 0 for a series without events.
  double last_event() const noexcept {
    return times_.empty() ? 0.0 : times_.back();
  }

  friend bool operator==(const EventSeries&, const EventSeries&) = default;

 private:
  std::vector<double> times_;
  double tau_;
};

// Completely observed gaps X_1..X_n plus the censored remainder tau - T_n.
struct Gaps {
  std::vector<double> complete;
  double remainder = 0.0;
};

Gaps interevent_times(const EventSeries& series);

// Inverse of interevent_times: cumulative sums of the gaps, censored at tau.
// Used to rebuild permuted series. Throws DataError if the gaps overrun tau.
EventSeries series_from_gaps(std::span<const double> gaps, double tau);

struct Process {
  std::string id;
  EventSeries series;

  friend bool operator==(const Process&, const Process&) = default;
};

// A non-empty collection of processes with unique ids.
class MultiProcessData {
 public:
  explicit MultiProcessData(std::vector<Process> processes);
  MultiProcessData(std::string id, EventSeries series);

  std::span<const Process> processes() const noexcept { return processes_; }
  std::size_t size() const noexcept { return processes_.size(); }
  const Process& operator[](std::size_t i) const { return processes_[i]; }
  const Process* find(std::string_view id) const;

  // Sum of N_j(tau_j) over all processes.
  std::size_t total_events() const noexcept;

  friend bool operator==(const MultiProcessData&,
                         const MultiProcessData&) = default;

 private:
  std::vector<Process> processes_;
};

enum class DataFormat { LongCsv, Json };

// Parses event data. For LongCsv, censoring times come from a `#censoring`
// section; `default_tau` fills in any process not listed there. Events are
// sorted per process. Invalid input throws DataError with a line number
// where one applies.
MultiProcessData parse_events(std::istream& in, DataFormat format,
                              std::optional<double> default_tau = std::nullopt);
MultiProcessData parse_events(std::string_view text, DataFormat format,
                              std::optional<double> default_tau = std::nullopt);

// Guesses the format from a file extension (".json" or anything else).
DataFormat format_from_path(std::string_view path);

MultiProcessData load_events(const std::string& path,
                             std::optional<double> default_tau = std::nullopt);

// Serializers emit the normalized form: processes in stored order, events
// ascending, shortest round-trip decimal representation.
void write_long_csv(std::ostream& out, const MultiProcessData& data);
void write_json(std::ostream& out, const MultiProcessData& data);
std::string to_long_csv(const MultiProcessData& data);
std::string to_json(const MultiProcessData& data);

// Datasets shipped with the library, addressable by id ("lhd").
std::vector<std::string> bundled_dataset_ids();
MultiProcessData bundled_dataset(std::string_view id);

// Load-haul-dump machine failure times in hours, censored at 2000 hours.
EventSeries lhd_series();

}  // namespace rptrend

#endif  // RPTREND_EVENT_DATA_HPP_
