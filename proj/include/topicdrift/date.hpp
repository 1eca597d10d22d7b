// Copyright 2026 The topicdrift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace topicdrift {

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD. Returns nullopt for anything that is not a valid
// calendar date.
std::optional<Date> parse_iso_date(std::string_view text);

// DD.MM.YYYY as used in protocol metadata.
std::optional<Date> parse_german_date(std::string_view text);

std::string format_iso_date(const Date& date);

inline std::chrono::sys_days to_days(const Date& date) {
  return std::chrono::sys_days{date};
}

inline Date from_days(std::chrono::sys_days days) { return Date{days}; }

// Half-open [start, end).
struct DateRange {
  Date start;
  Date end;

  bool contains(const Date& d) const { return start <= d && d < end; }
  friend bool operator==(const DateRange&, const DateRange&) = default;
};

}  // namespace topicdrift
