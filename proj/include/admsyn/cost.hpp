// Copyright 2026 The admsyn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADMSYN_COST_HPP_
#define ADMSYN_COST_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace admsyn {

// A non-negative energy amount, or infinity. Infinity is a separate flag
// rather than a large sentinel, and addition saturates.
class Cost {
 public:
  constexpr Cost() = default;

  static constexpr Cost finite(std::int64_t v) { return Cost(v, false); }
  static constexpr Cost infinite() { return Cost(0, true); }

  constexpr bool is_finite() const { return !inf_; }
  constexpr bool is_infinite() const { return inf_; }

  // Only meaningful when finite.
  constexpr std::int64_t value() const { return value_; }

  friend constexpr Cost operator+(Cost a, Cost b) {
    if (a.inf_ || b.inf_) return infinite();
    return finite(a.value_ + b.value_);
  }
  Cost& operator+=(Cost o) { return *this = *this + o; }

  friend constexpr bool operator==(Cost a, Cost b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Cost a, Cost b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

  // "inf" or the decimal value.
  std::string to_string() const {
    return inf_ ? std::string("inf") : std::to_string(value_);
  }

 private:
  constexpr Cost(std::int64_t v, bool inf) : value_(v), inf_(inf) {}

  std::int64_t value_ = 0;
  bool inf_ = false;
};

inline constexpr Cost kInf = Cost::infinite();

inline std::ostream& operator<<(std::ostream& os, Cost c) {
  return os << c.to_string();
}

}  // namespace admsyn

#endif  // ADMSYN_COST_HPP_
