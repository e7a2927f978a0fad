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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fasrsma/correlation.hpp"
#include "fasrsma/philox.hpp"
#include "fasrsma/rsma.hpp"

namespace fasrsma {

enum class Scheme { FasRsma, TasRsma, FasNoma, TasNoma };

std::string scheme_name(Scheme scheme); // "fas-rsma", ...
Scheme parse_scheme(const std::string& text);
bool is_noma(Scheme scheme) noexcept;
bool uses_port_selection(Scheme scheme) noexcept;

// Per-trial channel generator. Trial t, user u, port k uses Philox counter
// (t, u*N + k) under the plan seed, so any trial can be regenerated alone.
class ChannelDrawer {
public:
    ChannelDrawer(const CovarianceMatrix& cov, double mean_gain, std::uint64_t seed, int num_users);

    int num_ports() const noexcept { return sampler_.num_ports(); }
    int num_users() const noexcept { return num_users_; }

    // Largest port gain |h_n|^2 per user, and the gain of the first port of
    // the same draw (the fixed-antenna reference).
    void draw(std::uint64_t trial, std::span<double> selected, std::span<double> first_port);

private:
    CorrelatedChannelSampler sampler_;
    Philox4x32 rng_;
    int num_users_;
    std::vector<std::complex<double>> white_;
    std::vector<std::complex<double>> port_;
};

struct SimulationPlan {
    ChannelGeometry geometry;
    // Replaces the Jakes covariance of `geometry` when set.
    std::optional<CovarianceMatrix> covariance;
    std::size_t trials = 1'000'000;
    std::uint64_t seed = 42;
    Scheme scheme = Scheme::FasRsma;
    unsigned workers = 0;     // 0: hardware concurrency
    std::size_t chunk = 8192; // trials per accumulation chunk

    void validate() const;
    // Jakes covariance for N >= 2, the scalar 1 for a single port.
    CovarianceMatrix port_covariance() const;
};

struct SimEstimate {
    std::size_t trials = 0;
    std::vector<double> outage;              // either stage fails
    std::vector<double> outage_stderr;
    std::vector<double> outage_intersection; // both stages fail
    std::vector<bool> unresolved;            // fewer than 10 outage events
    std::vector<bool> feasible;
    double common_capacity = 0.0; // NaN for NOMA
    double common_stderr = 0.0;
    std::vector<double> private_capacity;
    std::vector<double> private_stderr;
    double sum_capacity = 0.0;
    double sum_stderr = 0.0;
    std::vector<double> mean_gain;
};

// RSMA schemes. Every configuration is evaluated on the same draws.
std::vector<SimEstimate> simulate_points(const SimulationPlan& plan, std::span<const RsmaConfig> configs);
SimEstimate run_fas_rsma(SimulationPlan plan, const RsmaConfig& cfg);
SimEstimate run_tas_rsma(SimulationPlan plan, const RsmaConfig& cfg);

// Two-user NOMA; throws Unsupported for other user counts.
std::vector<SimEstimate> simulate_noma_points(const SimulationPlan& plan, std::span<const NomaConfig> configs);
SimEstimate run_noma(const SimulationPlan& plan, const NomaConfig& cfg);

} // namespace fasrsma
