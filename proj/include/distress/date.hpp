// Copyright 2026 The Distress Authors.
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

#ifndef DISTRESS_DATE_HPP_
#define DISTRESS_DATE_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace distress {

// Calendar date with day precision.
using Date = std::chrono::sys_days;

// Parses a strict ISO "YYYY-MM-DD" date. Returns nullopt for anything that
// is not a valid calendar date.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date date);

// Signed day offset a - b.
inline int day_offset(Date a, Date b) {
  return static_cast<int>((a - b).count());
}

inline Date add_days(Date date, int days) {
  return date + std::chrono::days{days};
}

}  // namespace distress

#endif  // DISTRESS_DATE_HPP_
