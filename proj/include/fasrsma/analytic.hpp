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

#include <vector>

#include "fasrsma/correlation.hpp"
#include "fasrsma/rsma.hpp"
#include "fasrsma/specfun.hpp"

namespace fasrsma {

// Node sets for the three integrals: the shared-component integral inside the
// outage CDF, and the outer amplitude / inner shared-component integrals of
// the capacity expressions.
struct QuadratureSettings {
    specfun::QuadratureSpec outage;
    specfun::QuadratureSpec outer;
    specfun::QuadratureSpec inner;

    // Cutoff 8 sqrt(eta0) and 30 nodes everywhere.
    static QuadratureSettings defaults(double mean_gain = 1.0);
    void validate() const;
};

// Conditional parameters of one equicorrelated block. Given the shared
// component amplitude theta, every port of the block is Rician with
// line-of-sight amplitude sqrt(rho) theta and per-component variance sigma^2.
struct BlockConditionalParams {
    int size = 1;
    double rho = 0.0;
    double sigma = 0.0; // sqrt(eta0 (1 - rho) / 2)
    double sqrt_rho = 0.0;
    double mean_gain = 1.0;

    static BlockConditionalParams from(const CorrelationBlock& block, double mean_gain);

    // One port, or ports that are copies of each other: the block maximum is
    // a plain Rayleigh amplitude.
    bool single_port() const noexcept { return size == 1 || rho >= 1.0; }
};

// P(port amplitude <= x | theta) = 1 - Q1(theta sqrt(rho)/sigma, x/sigma).
// Throws std::invalid_argument when rho = 1 (no conditional spread).
double block_conditional_cdf(const BlockConditionalParams& block, double theta, double x);

// Distribution of the largest port amplitude under a block model, with the
// shared-component integral evaluated on fixed Gauss-Chebyshev nodes.
class SelectedAmplitude {
public:
    SelectedAmplitude(const BlockCorrelationModel& model, const specfun::QuadratureSpec& inner);

    double cdf(double x) const;
    double pdf(double x) const;
    // CDF and density together, sharing the Marcum evaluations.
    void evaluate(double x, double& cdf, double& pdf) const;

    double mean_gain() const noexcept { return mean_gain_; }

private:
    void block_terms(const BlockConditionalParams& b, double x, bool want_pdf, double& cdf,
                     double& pdf) const;

    std::vector<BlockConditionalParams> blocks_;
    std::vector<specfun::QuadratureNode> nodes_;
    std::vector<double> mixing_; // weight * Rayleigh density of the shared component
    double mean_gain_;
};

// Outage probability of one user: CDF of the selected amplitude at the
// user's amplitude threshold; exactly 1 when the threshold is unreachable.
double outage_probability(const BlockCorrelationModel& model, const EffectiveThreshold& threshold,
                          const specfun::QuadratureSpec& quad);

// Single fixed antenna: 1 - exp(-a^2 / eta0).
double outage_probability_tas(double mean_gain, double amplitude_threshold);

double max_amplitude_pdf(const BlockCorrelationModel& model, double x,
                         const specfun::QuadratureSpec& quad);

// Density of the smallest selected amplitude among `users` i.i.d. users.
double min_user_pdf(const BlockCorrelationModel& model, int users, double x,
                    const specfun::QuadratureSpec& quad);

// Same for single-antenna users: U (2x/eta0) exp(-U x^2 / eta0).
double min_user_pdf_tas(double mean_gain, int users, double x);

struct CapacityResult {
    double common = 0.0;
    std::vector<double> private_stream;
    double sum = 0.0;
};

// Ergodic common rate (limited by the weakest user) and private rates.
CapacityResult average_capacity(const BlockCorrelationModel& model, const RsmaConfig& cfg,
                                const QuadratureSettings& quad);

CapacityResult average_capacity_tas(const RsmaConfig& cfg, double mean_gain,
                                    const QuadratureSettings& quad);

struct AnalyticResult {
    std::vector<double> outage; // per user
    std::vector<bool> feasible;
    CapacityResult capacity;
};

AnalyticResult evaluate_fas(const BlockCorrelationModel& model, const RsmaConfig& cfg,
                            const QuadratureSettings& quad);
AnalyticResult evaluate_tas(const RsmaConfig& cfg, double mean_gain,
                            const QuadratureSettings& quad);

} // namespace fasrsma
