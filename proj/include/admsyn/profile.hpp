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

#ifndef ADMSYN_PROFILE_HPP_
#define ADMSYN_PROFILE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace admsyn {

// A set of (cooperative, adversarial) outcome pairs of a strategy
// continuation, both given as ranks into a sorted list of payoff values.
// Stored as a k-by-k bit matrix: row = cooperative rank, bit = adversarial
// rank.
class ProfileSet {
 public:
  ProfileSet() = default;
  explicit ProfileSet(int k) : k_(k), w_((k + 63) / 64), bits_(k * w_, 0) {}

  int k() const { return k_; }

  bool empty() const {
    for (std::uint64_t b : bits_) {
      if (b) return false;
    }
    return true;
  }

  void clear() { std::fill(bits_.begin(), bits_.end(), 0); }

  void insert(int c, int a) { bits_[c * w_ + a / 64] |= bit(a); }

  bool contains(int c, int a) const {
    return (bits_[c * w_ + a / 64] & bit(a)) != 0;
  }

  ProfileSet& operator|=(const ProfileSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  ProfileSet& operator&=(const ProfileSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }

  friend bool operator==(const ProfileSet&, const ProfileSet&) = default;

  // Calls f(c, a) in increasing (c, a) order.
  template <class F>
  void for_each(F&& f) const {
    for (int c = 0; c < k_; ++c) {
      for (int w = 0; w < w_; ++w) {
        for (std::uint64_t b = bits_[c * w_ + w]; b; b &= b - 1) {
          f(c, w * 64 + std::countr_zero(b));
        }
      }
    }
  }

  // Outcomes of an Env node whose children realize one pair from each
  // operand: cooperative values take the min, adversarial the max.
  static ProfileSet combine(const ProfileSet& x, const ProfileSet& y) {
    ProfileSet r(x.k_);
    std::vector<std::uint64_t> tmp(x.w_);
    for (int c1 = 0; c1 < x.k_; ++c1) {
      const int low1 = x.lowest(c1);
      if (low1 < 0) continue;
      for (int c2 = 0; c2 < x.k_; ++c2) {
        const int low2 = y.lowest(c2);
        if (low2 < 0) continue;
        // max(a1, a2) = m iff m is in one operand and the other operand
        // has an element <= m.
        const int row = c1 < c2 ? c1 : c2;
        for (int w = 0; w < x.w_; ++w) {
          const std::uint64_t a = x.bits_[c1 * x.w_ + w];
          const std::uint64_t b = y.bits_[c2 * y.w_ + w];
          r.bits_[row * r.w_ + w] |= (a & at_least(low2, w)) |
                                     (b & at_least(low1, w));
        }
      }
    }
    return r;
  }

 private:
  static std::uint64_t bit(int a) { return std::uint64_t{1} << (a % 64); }

  // Mask of the bits in word w whose index is >= m.
  static std::uint64_t at_least(int m, int w) {
    const int lo = w * 64;
    if (m <= lo) return ~std::uint64_t{0};
    if (m >= lo + 64) return 0;
    return ~std::uint64_t{0} << (m - lo);
  }

  int lowest(int c) const {
    for (int w = 0; w < w_; ++w) {
      const std::uint64_t b = bits_[c * w_ + w];
      if (b) return w * 64 + std::countr_zero(b);
    }
    return -1;
  }

  int k_ = 0;
  int w_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace admsyn

#endif  // ADMSYN_PROFILE_HPP_
