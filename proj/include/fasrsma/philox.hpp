// Copyright 2026 The fasrsma Authors
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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace fasrsma {

// Philox4x32-10 counter-based generator. Every output block is a pure
// function of (key, counter), so trials can be generated in any order.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit constexpr Philox4x32(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    constexpr Philox4x32(std::uint32_t k0, std::uint32_t k1) noexcept : key_{k0, k1} {}

    constexpr Block operator()(Block ctr) const noexcept {
        std::uint32_t k0 = key_[0];
        std::uint32_t k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0, static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1, static_cast<std::uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return ctr;
    }

    // CN(0, variance) sample for (trial, stream) via Box-Muller on one block.
    std::complex<double> complex_normal(std::uint64_t trial, std::uint32_t stream,
                                        double variance) const noexcept {
        const Block out = (*this)(Block{static_cast<std::uint32_t>(trial),
                                        static_cast<std::uint32_t>(trial >> 32), stream, 0u});
        const double u1 = open_unit(out[0], out[1]);
        const double u2 = open_unit(out[2], out[3]);
        const double r = std::sqrt(-variance * std::log(u1));
        const double phase = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phase), r * std::sin(phase)};
    }

    // Uniform on (0, 1) with 52 random bits; both ends are excluded exactly.
    static constexpr double open_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 12;
        return (static_cast<double>(bits) + 0.5) * 0x1p-52;
    }

private:
    std::array<std::uint32_t, 2> key_;
};

} // namespace fasrsma
