// Copyright 2026 The dsapf Authors
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

#ifndef DSAPF_TYPES_HPP
#define DSAPF_TYPES_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <vector>

/**
 * \file
 * \brief Value types shared by every module: band sets, allocation and power matrices, gain tensors.
 */

namespace dsapf {

/// Maximum number of bands a scenario may declare (one bit per band in a BandSet).
inline constexpr int kMaxBands = 64;

/// A set of band indices in [0, kMaxBands), stored as a bitmask.
/**
 * Used both for a user's selected row of the allocation matrix and for the
 * availability vector v(t). Iteration visits bands in increasing order.
 */
class BandSet {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_{rest} {}

    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_{0};
  };

  constexpr BandSet() = default;

  static constexpr BandSet from_mask(std::uint64_t mask) {
    BandSet set;
    set.mask_ = mask;
    return set;
  }

  /// All bands in [0, n_bands).
  static constexpr BandSet all(int n_bands) {
    assert(n_bands >= 0 && n_bands <= kMaxBands);
    return from_mask(n_bands == kMaxBands ? ~std::uint64_t{0} : (std::uint64_t{1} << n_bands) - 1);
  }

  constexpr void insert(int band) { mask_ |= bit(band); }
  constexpr void erase(int band) { mask_ &= ~bit(band); }
  [[nodiscard]] constexpr bool contains(int band) const { return (mask_ & bit(band)) != 0; }
  [[nodiscard]] constexpr int size() const { return std::popcount(mask_); }
  [[nodiscard]] constexpr bool empty() const { return mask_ == 0; }
  [[nodiscard]] constexpr std::uint64_t mask() const { return mask_; }

  /// Band index of the k-th member in increasing order.
  [[nodiscard]] int nth(int k) const;

  [[nodiscard]] std::vector<int> to_vector() const;

  [[nodiscard]] constexpr iterator begin() const { return iterator{mask_}; }
  [[nodiscard]] constexpr iterator end() const { return iterator{}; }

  constexpr BandSet operator&(BandSet other) const { return from_mask(mask_ & other.mask_); }
  constexpr BandSet operator|(BandSet other) const { return from_mask(mask_ | other.mask_); }
  constexpr BandSet without(BandSet other) const { return from_mask(mask_ & ~other.mask_); }
  [[nodiscard]] constexpr bool is_subset_of(BandSet other) const { return (mask_ & ~other.mask_) == 0; }

  constexpr bool operator==(const BandSet&) const = default;
  constexpr auto operator<=>(const BandSet& other) const { return mask_ <=> other.mask_; }

 private:
  static constexpr std::uint64_t bit(int band) {
    assert(band >= 0 && band < kMaxBands);
    return std::uint64_t{1} << band;
  }

  std::uint64_t mask_{0};
};

std::ostream& operator<<(std::ostream& os, BandSet set);

/// Binary N x m band selection matrix a_i^(j), one BandSet per user row.
class AllocationMatrix {
 public:
  AllocationMatrix() = default;
  AllocationMatrix(int n_users, int n_bands) : n_bands_{n_bands}, rows_(static_cast<std::size_t>(n_users)) {}

  [[nodiscard]] int n_users() const { return static_cast<int>(rows_.size()); }
  [[nodiscard]] int n_bands() const { return n_bands_; }

  [[nodiscard]] BandSet row(int user) const { return rows_[static_cast<std::size_t>(user)]; }
  void set_row(int user, BandSet selection) { rows_[static_cast<std::size_t>(user)] = selection; }
  [[nodiscard]] bool selected(int user, int band) const { return row(user).contains(band); }

  [[nodiscard]] std::span<const BandSet> rows() const { return rows_; }

  bool operator==(const AllocationMatrix&) const = default;

 private:
  int n_bands_{0};
  std::vector<BandSet> rows_;
};

/// Row-major N x m matrix of transmit powers P_i^(j) in watts.
class PowerMatrix {
 public:
  PowerMatrix() = default;
  PowerMatrix(int n_users, int n_bands)
      : n_users_{n_users}, n_bands_{n_bands}, watts_(static_cast<std::size_t>(n_users) * n_bands, 0.0) {}

  [[nodiscard]] int n_users() const { return n_users_; }
  [[nodiscard]] int n_bands() const { return n_bands_; }

  [[nodiscard]] double at(int user, int band) const { return watts_[index(user, band)]; }
  double& at(int user, int band) { return watts_[index(user, band)]; }

  [[nodiscard]] std::span<const double> row(int user) const {
    return std::span<const double>{watts_}.subspan(static_cast<std::size_t>(user) * n_bands_, n_bands_);
  }
  std::span<double> row(int user) {
    return std::span<double>{watts_}.subspan(static_cast<std::size_t>(user) * n_bands_, n_bands_);
  }

  [[nodiscard]] double row_total(int user) const;

  bool operator==(const PowerMatrix&) const = default;

 private:
  [[nodiscard]] std::size_t index(int user, int band) const {
    assert(user >= 0 && user < n_users_ && band >= 0 && band < n_bands_);
    return static_cast<std::size_t>(user) * n_bands_ + band;
  }

  int n_users_{0};
  int n_bands_{0};
  std::vector<double> watts_;
};

/// Power gains |h_ik^(j)|^2 indexed by (receiver i, transmitter k, band j).
class GainTensor {
 public:
  GainTensor() = default;
  GainTensor(int n_users, int n_bands)
      : n_users_{n_users},
        n_bands_{n_bands},
        gains_(static_cast<std::size_t>(n_users) * n_users * n_bands, 0.0) {}

  [[nodiscard]] int n_users() const { return n_users_; }
  [[nodiscard]] int n_bands() const { return n_bands_; }

  [[nodiscard]] double at(int rx, int tx, int band) const { return gains_[index(rx, tx, band)]; }
  double& at(int rx, int tx, int band) { return gains_[index(rx, tx, band)]; }

  [[nodiscard]] std::span<const double> data() const { return gains_; }

  bool operator==(const GainTensor&) const = default;

 private:
  [[nodiscard]] std::size_t index(int rx, int tx, int band) const {
    assert(rx >= 0 && rx < n_users_ && tx >= 0 && tx < n_users_ && band >= 0 && band < n_bands_);
    return (static_cast<std::size_t>(rx) * n_users_ + tx) * n_bands_ + band;
  }

  int n_users_{0};
  int n_bands_{0};
  std::vector<double> gains_;
};

}  // namespace dsapf

#endif
