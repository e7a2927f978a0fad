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
#include <cstddef>
#include <span>
#include <vector>

namespace fasrsma {

double db_to_linear(double db);

// Denominators of the gain-domain thresholds at or below this value mark the
// decoding stage as infeasible at every SNR.
inline constexpr double kFeasibilityTolerance = 1e-12;

// Downlink rate-splitting setup. Thresholds are linear SINRs; use from_db()
// to build one from the usual dB figures.
struct RsmaConfig {
    double snr = 1.0;                      // average transmit SNR (linear)
    double t_common = 0.7;                 // common-stream power fraction
    std::vector<double> t_private;         // per-user private power fractions
    std::vector<double> common_threshold;  // per-user common-stream SINR targets
    std::vector<double> private_threshold; // per-user private-stream SINR targets

    int num_users() const noexcept { return static_cast<int>(t_private.size()); }

    // Throws std::invalid_argument on inconsistent sizes, non-positive
    // fractions or fractions that do not add up to one.
    void validate() const;

    // private_split holds each user's share of the non-common power and must
    // add up to one. Threshold lists of length one apply to every user.
    static RsmaConfig from_db(double snr_db, double t_common, std::span<const double> private_split,
                              std::span<const double> common_threshold_db,
                              std::span<const double> private_threshold_db);
};

// Gain-domain thresholds for one user. A stage that cannot reach its target
// at any gain has an infinite threshold.
struct EffectiveThreshold {
    double common = 0.0;
    double private_stream = 0.0;

    bool feasible() const noexcept;
    // Outage when either stage fails: g < max(common, private).
    double gain() const noexcept;
    // Outage only when both stages fail: g < min(common, private).
    double intersection_gain() const noexcept;
    // sqrt(gain()), the threshold on the selected port amplitude.
    double amplitude() const noexcept;
};

double common_sinr(const RsmaConfig& cfg, double gain);
double private_sinr(const RsmaConfig& cfg, int user, double gain);

std::vector<EffectiveThreshold> effective_thresholds(const RsmaConfig& cfg);

// Lowest index among the smallest gains.
int weakest_user(std::span<const double> gains);

struct InstantaneousRates {
    std::vector<double> common;  // log2(1 + common SINR) per user
    std::vector<double> private_stream;
    int weakest_user = 0;
    double common_rate = 0.0; // common rate of the weakest user
    double sum = 0.0;
};

InstantaneousRates instantaneous_rates(const RsmaConfig& cfg, std::span<const double> gains);

// Two-user power-domain NOMA baseline. Both receivers decode user 1's signal
// first, treating user 2's as noise; user 2 then cancels it and decodes its
// own.
struct NomaConfig {
    double snr = 1.0;
    std::array<double, 2> split{0.6, 0.4};
    std::array<double, 2> threshold{1.0, 1.0}; // linear SINR targets

    void validate() const;
};

// Gain below which each NOMA user is in outage (infinite when unreachable).
std::array<double, 2> noma_gain_thresholds(const NomaConfig& cfg);

// Per-user achievable rates at the given gains.
std::array<double, 2> noma_rates(const NomaConfig& cfg, std::array<double, 2> gains);

} // namespace fasrsma
