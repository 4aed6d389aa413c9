/*
 * Copyright 2026 The hybrid-rrt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>

namespace hrrt {

/**
 * Two's-complement fixed-point number with FracBits fractional bits.
 *
 * Every operation is the exact rational result truncated toward negative
 * infinity, then saturated to the storage range. Saturation keeps a state from
 * wrapping to the opposite side of the map.
 */
template <std::signed_integral Storage, int FracBits>
class Fixed {
  static_assert(FracBits > 0 && FracBits < std::numeric_limits<Storage>::digits);

 public:
  using storage_type = Storage;
  static constexpr int kFracBits = FracBits;
  static constexpr int kIntBits = std::numeric_limits<Storage>::digits + 1 - FracBits;
  static constexpr double kResolution = 1.0 / static_cast<double>(std::int64_t{1} << FracBits);
  static constexpr std::int64_t kRawMin = std::numeric_limits<Storage>::min();
  static constexpr std::int64_t kRawMax = std::numeric_limits<Storage>::max();

  constexpr Fixed() = default;

  static constexpr Fixed from_raw(std::int64_t raw) noexcept { return Fixed(saturate(raw)); }

  /// Truncates toward negative infinity; NaN maps to zero.
  static Fixed from_double(double v) noexcept {
    if (std::isnan(v)) return Fixed();
    const double scaled = std::floor(std::ldexp(v, FracBits));
    if (scaled <= static_cast<double>(kRawMin)) return Fixed(static_cast<Storage>(kRawMin));
    if (scaled >= static_cast<double>(kRawMax)) return Fixed(static_cast<Storage>(kRawMax));
    return Fixed(static_cast<Storage>(static_cast<std::int64_t>(scaled)));
  }

  static constexpr Fixed max() noexcept { return Fixed(static_cast<Storage>(kRawMax)); }
  static constexpr Fixed min() noexcept { return Fixed(static_cast<Storage>(kRawMin)); }

  constexpr Storage raw() const noexcept { return raw_; }
  double to_double() const noexcept { return std::ldexp(static_cast<double>(raw_), -FracBits); }

  friend constexpr Fixed operator+(Fixed a, Fixed b) noexcept {
    return Fixed(saturate(std::int64_t{a.raw_} + std::int64_t{b.raw_}));
  }
  friend constexpr Fixed operator-(Fixed a, Fixed b) noexcept {
    return Fixed(saturate(std::int64_t{a.raw_} - std::int64_t{b.raw_}));
  }
  friend constexpr Fixed operator-(Fixed a) noexcept { return Fixed(saturate(-std::int64_t{a.raw_})); }
  friend constexpr Fixed operator*(Fixed a, Fixed b) noexcept {
    // C++20 defines >> on negative values as an arithmetic (flooring) shift.
    return Fixed(saturate((std::int64_t{a.raw_} * std::int64_t{b.raw_}) >> FracBits));
  }

  friend constexpr bool operator==(Fixed, Fixed) = default;
  friend constexpr auto operator<=>(Fixed, Fixed) = default;

 private:
  constexpr explicit Fixed(Storage raw) noexcept : raw_(raw) {}

  static constexpr Storage saturate(std::int64_t v) noexcept {
    if (v < kRawMin) return static_cast<Storage>(kRawMin);
    if (v > kRawMax) return static_cast<Storage>(kRawMax);
    return static_cast<Storage>(v);
  }

  Storage raw_ = 0;
};

/// Cartesian coordinate: 32-bit, 24 integer and 8 fractional bits.
using FixedCoord = Fixed<std::int32_t, 8>;
/// Angle in radians: 16-bit, 3 integer and 13 fractional bits.
using FixedAngle = Fixed<std::int16_t, 13>;

static_assert(FixedCoord::kIntBits == 24);
static_assert(FixedAngle::kIntBits == 3);

/// Wraps to (-pi, pi] and quantizes.
inline FixedAngle angle_from_double(double radians) noexcept {
  constexpr double kPi = 3.14159265358979323846;
  double a = std::remainder(radians, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return FixedAngle::from_double(a);
}

}  // namespace hrrt
