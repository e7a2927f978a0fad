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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fasrsma {

// Linear fluid-antenna aperture: N ports spread over W wavelengths.
struct ChannelGeometry {
    int num_ports = 10;
    double aperture = 8.0;  // W, in wavelengths
    double mean_gain = 1.0; // eta0

    // Ports >= 1 is enough for simulation; the Jakes kernel itself needs >= 2.
    void validate() const;
};

// Real symmetric port covariance (correlation coefficients, unit diagonal for
// Jakes). Thin wrapper so that raw matrices cannot be mixed up with factors.
class CovarianceMatrix {
public:
    CovarianceMatrix() = default;
    explicit CovarianceMatrix(Eigen::MatrixXd entries);

    static CovarianceMatrix identity(int n);

    int size() const noexcept { return static_cast<int>(entries_.rows()); }
    double operator()(int k, int l) const { return entries_(k, l); }
    const Eigen::MatrixXd& matrix() const noexcept { return entries_; }

    bool is_symmetric(double tol = 1e-12) const;

private:
    Eigen::MatrixXd entries_;
};

// Eigenvalues in descending order.
struct EigenSpectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double sum() const;
};

struct CorrelationBlock {
    int size = 1;     // L_d
    double rho = 0.0; // intra-block correlation

    // One eigenvalue 1+(L-1)rho and L-1 copies of 1-rho.
    void append_implied_eigenvalues(std::vector<double>& out) const;
};

// Block-diagonal approximation of the port covariance: D independent
// equicorrelated blocks.
struct BlockCorrelationModel {
    std::vector<CorrelationBlock> blocks;
    double mean_gain = 1.0;

    int num_ports() const;
    std::size_t num_blocks() const noexcept { return blocks.size(); }
    std::vector<double> implied_eigenvalues() const; // sorted descending
    void validate() const;
};

struct FitStrategy {
    enum class Kind { Constant, Variable };

    Kind kind = Kind::Variable;
    double rho = 0.97; // only used by Constant

    static FitStrategy constant(double rho) { return {Kind::Constant, rho}; }
    static FitStrategy variable() { return {Kind::Variable, 0.0}; }

    std::string label() const; // "vbc" or "cbc0.97"
    static FitStrategy parse(const std::string& text);
};

// How the number of blocks D is chosen when the caller does not fix it.
enum class BlockCountRule {
    MinDistance,        // run the allocation for every D and keep the best fit
    DominantEigenvalues // D = #{eigenvalues > 1}
};

struct FitStats {
    std::size_t allocation_steps = 0;
    std::size_t candidate_evaluations = 0;
};

CovarianceMatrix build_jakes_covariance(const ChannelGeometry& geometry);

// Block-diagonal covariance implied by a fitted model.
CovarianceMatrix block_covariance(const BlockCorrelationModel& model);

// Throws ContractViolation for non-symmetric input or eigenvalues below -1e-6;
// values in [-1e-6, 0) are clamped to zero.
EigenSpectrum eigen_spectrum(const CovarianceMatrix& cov);

// Greedy eigenvalue allocation: the top D eigenvalues seed D blocks and each
// remaining eigenvalue (descending) joins the block whose implied spectrum
// stays closest to its assigned targets.
BlockCorrelationModel fit_block_model(const EigenSpectrum& spectrum, int num_blocks,
                                      const FitStrategy& strategy, double mean_gain = 1.0,
                                      FitStats* stats = nullptr);

// || sorted eig(Sigma) - sorted eig(Sigma_hat) ||_2^2
double model_distance(const EigenSpectrum& spectrum, const BlockCorrelationModel& model);

int dominant_block_count(const EigenSpectrum& spectrum);

struct FittedModel {
    ChannelGeometry geometry;
    FitStrategy strategy;
    BlockCorrelationModel model;
    double distance = 0.0;
};

// Builds the Jakes covariance, fits it and records the distance. A fixed
// block count overrides `rule`.
FittedModel fit_geometry(const ChannelGeometry& geometry, const FitStrategy& strategy,
                         std::optional<int> num_blocks = std::nullopt,
                         BlockCountRule rule = BlockCountRule::MinDistance);

// Same as fit_geometry for an arbitrary port covariance of size
// geometry.num_ports. The aperture is only recorded.
FittedModel fit_covariance(const CovarianceMatrix& cov, const ChannelGeometry& geometry,
                           const FitStrategy& strategy, std::optional<int> num_blocks = std::nullopt,
                           BlockCountRule rule = BlockCountRule::MinDistance);

// Key-value text form of a fit ("N = 10", "block.1 = 2 0.63...", ...).
// Reals are written with 17 significant digits so parsing is exact.
std::string format_fit_document(const FittedModel& fit);
FittedModel parse_fit_document(const std::string& text);

enum class SquareRootMethod { Eigen, Cholesky };

// Draws complex port vectors with covariance eta0 * Sigma as R z, R a square
// root of Sigma and z i.i.d. CN(0, eta0).
class CorrelatedChannelSampler {
public:
    CorrelatedChannelSampler(const CovarianceMatrix& cov, double mean_gain,
                             SquareRootMethod method = SquareRootMethod::Eigen);

    int num_ports() const noexcept { return static_cast<int>(factor_.rows()); }
    double mean_gain() const noexcept { return mean_gain_; }
    const Eigen::MatrixXd& factor() const noexcept { return factor_; }

    // Applies the factor to pre-drawn i.i.d. CN(0, eta0) samples.
    void correlate(std::span<const std::complex<double>> white,
                   std::span<std::complex<double>> out) const;

private:
    Eigen::MatrixXd factor_;
    double mean_gain_;
};

// Channel draws for small studies and tests: result[trial][user] is a length-N
// vector. Trial t, user u uses the counter stream (seed, t) so the draws do
// not depend on how a caller partitions trials.
std::vector<std::vector<std::vector<std::complex<double>>>>
sample_correlated_channels(const CovarianceMatrix& cov, double mean_gain, std::uint64_t seed,
                           int num_users, std::size_t num_trials);

} // namespace fasrsma
