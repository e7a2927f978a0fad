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

#include "fasrsma/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fasrsma {

namespace {

double rayleigh_cdf(double x, double eta0) { return -std::expm1(-x * x / eta0); }

double rayleigh_pdf(double x, double eta0) { return 2.0 * x / eta0 * std::exp(-x * x / eta0); }

// Product of all block CDFs and the density of the overall maximum.
void combine_blocks(const std::vector<double>& cdfs, const std::vector<double>& pdfs, double& cdf,
                    double& pdf) {
    cdf = 1.0;
    for (double c : cdfs) cdf *= c;
    pdf = 0.0;
    for (std::size_t d = 0; d < cdfs.size(); ++d) {
        double term = pdfs[d];
        for (std::size_t j = 0; j < cdfs.size(); ++j)
            if (j != d) term *= cdfs[j];
        pdf += term;
    }
}

double clamp_probability(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

} // namespace

QuadratureSettings QuadratureSettings::defaults(double mean_gain) {
    if (!(mean_gain > 0.0)) throw std::invalid_argument("mean gain must be positive");
    const specfun::QuadratureSpec spec{8.0 * std::sqrt(mean_gain), 30};
    return {spec, spec, spec};
}

void QuadratureSettings::validate() const {
    outage.validate();
    outer.validate();
    inner.validate();
}

BlockConditionalParams BlockConditionalParams::from(const CorrelationBlock& block, double mean_gain) {
    if (block.size < 1) throw std::invalid_argument("block size must be >= 1");
    if (!(block.rho >= 0.0 && block.rho <= 1.0))
        throw std::invalid_argument("block correlation must lie in [0, 1]");
    if (!(mean_gain > 0.0)) throw std::invalid_argument("mean gain must be positive");
    BlockConditionalParams p;
    p.size = block.size;
    p.rho = block.rho;
    p.sigma = std::sqrt(mean_gain * (1.0 - block.rho) / 2.0);
    p.sqrt_rho = std::sqrt(block.rho);
    p.mean_gain = mean_gain;
    return p;
}

double block_conditional_cdf(const BlockConditionalParams& block, double theta, double x) {
    if (!(block.rho < 1.0) || !(block.sigma > 0.0))
        throw std::invalid_argument("conditional CDF needs rho < 1; use the single-antenna form");
    if (!(theta >= 0.0) || !(x >= 0.0)) throw std::domain_error("arguments must be non-negative");
    return specfun::marcum_p1(theta * block.sqrt_rho / block.sigma, x / block.sigma);
}

SelectedAmplitude::SelectedAmplitude(const BlockCorrelationModel& model,
                                     const specfun::QuadratureSpec& inner)
    : nodes_(specfun::chebyshev_nodes(inner)), mean_gain_(model.mean_gain) {
    model.validate();
    blocks_.reserve(model.blocks.size());
    for (const auto& b : model.blocks) blocks_.push_back(BlockConditionalParams::from(b, model.mean_gain));
    mixing_.reserve(nodes_.size());
    for (const auto& n : nodes_) mixing_.push_back(n.weight * rayleigh_pdf(n.abscissa, mean_gain_));
}

void SelectedAmplitude::block_terms(const BlockConditionalParams& b, double x, bool want_pdf,
                                    double& cdf, double& pdf) const {
    if (b.single_port()) {
        cdf = rayleigh_cdf(x, mean_gain_);
        pdf = want_pdf ? rayleigh_pdf(x, mean_gain_) : 0.0;
        return;
    }
    const double sigma2 = b.sigma * b.sigma;
    const double arg_x = x / b.sigma;
    cdf = 0.0;
    pdf = 0.0;
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
        const double theta = nodes_[m].abscissa;
        const double p = specfun::marcum_p1(theta * b.sqrt_rho / b.sigma, arg_x);
        const double p_pow = std::pow(p, b.size - 1);
        cdf += mixing_[m] * p_pow * p;
        if (want_pdf)
            pdf += mixing_[m] * b.size * p_pow * specfun::rician_pdf(x, theta * b.sqrt_rho, sigma2);
    }
}

void SelectedAmplitude::evaluate(double x, double& cdf, double& pdf) const {
    if (!(x >= 0.0)) throw std::domain_error("amplitude must be non-negative");
    std::vector<double> cdfs(blocks_.size()), pdfs(blocks_.size());
    for (std::size_t d = 0; d < blocks_.size(); ++d) block_terms(blocks_[d], x, true, cdfs[d], pdfs[d]);
    combine_blocks(cdfs, pdfs, cdf, pdf);
    cdf = clamp_probability(cdf);
    pdf = std::max(pdf, 0.0);
}

double SelectedAmplitude::cdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("amplitude must be non-negative");
    double total = 1.0, c = 0.0, unused = 0.0;
    for (const auto& b : blocks_) {
        block_terms(b, x, false, c, unused);
        total *= c;
    }
    return clamp_probability(total);
}

double SelectedAmplitude::pdf(double x) const {
    double c = 0.0, p = 0.0;
    evaluate(x, c, p);
    return p;
}

double outage_probability(const BlockCorrelationModel& model, const EffectiveThreshold& threshold,
                          const specfun::QuadratureSpec& quad) {
    if (!threshold.feasible()) return 1.0;
    return SelectedAmplitude(model, quad).cdf(threshold.amplitude());
}

double outage_probability_tas(double mean_gain, double amplitude_threshold) {
    if (!(mean_gain > 0.0)) throw std::invalid_argument("mean gain must be positive");
    if (std::isinf(amplitude_threshold) && amplitude_threshold > 0) return 1.0;
    if (!(amplitude_threshold >= 0.0)) throw std::domain_error("threshold must be non-negative");
    return rayleigh_cdf(amplitude_threshold, mean_gain);
}

double max_amplitude_pdf(const BlockCorrelationModel& model, double x,
                         const specfun::QuadratureSpec& quad) {
    return SelectedAmplitude(model, quad).pdf(x);
}

double min_user_pdf(const BlockCorrelationModel& model, int users, double x,
                    const specfun::QuadratureSpec& quad) {
    if (users < 1) throw std::invalid_argument("need at least one user");
    double c = 0.0, p = 0.0;
    SelectedAmplitude(model, quad).evaluate(x, c, p);
    return users * std::pow(1.0 - c, users - 1) * p;
}

double min_user_pdf_tas(double mean_gain, int users, double x) {
    if (users < 1) throw std::invalid_argument("need at least one user");
    if (!(mean_gain > 0.0)) throw std::invalid_argument("mean gain must be positive");
    return users * 2.0 * x / mean_gain * std::exp(-users * x * x / mean_gain);
}

CapacityResult average_capacity(const BlockCorrelationModel& model, const RsmaConfig& cfg,
                                const QuadratureSettings& quad) {
    cfg.validate();
    quad.validate();
    const SelectedAmplitude dist(model, quad.inner);
    const int users = cfg.num_users();
    CapacityResult out;
    out.private_stream.assign(static_cast<std::size_t>(users), 0.0);
    for (const auto& node : specfun::chebyshev_nodes(quad.outer)) {
        double c = 0.0, f = 0.0;
        dist.evaluate(node.abscissa, c, f);
        const double g = node.abscissa * node.abscissa;
        const double weakest = users * std::pow(1.0 - c, users - 1) * f;
        out.common += node.weight * std::log2(1.0 + common_sinr(cfg, g)) * weakest;
        for (int u = 0; u < users; ++u)
            out.private_stream[static_cast<std::size_t>(u)] +=
                node.weight * std::log2(1.0 + private_sinr(cfg, u, g)) * f;
    }
    out.sum = out.common;
    for (double p : out.private_stream) out.sum += p;
    return out;
}

CapacityResult average_capacity_tas(const RsmaConfig& cfg, double mean_gain,
                                    const QuadratureSettings& quad) {
    cfg.validate();
    quad.validate();
    const int users = cfg.num_users();
    CapacityResult out;
    out.private_stream.assign(static_cast<std::size_t>(users), 0.0);
    for (const auto& node : specfun::chebyshev_nodes(quad.outer)) {
        const double x = node.abscissa;
        const double g = x * x;
        out.common += node.weight * std::log2(1.0 + common_sinr(cfg, g)) *
                      min_user_pdf_tas(mean_gain, users, x);
        const double f = rayleigh_pdf(x, mean_gain);
        for (int u = 0; u < users; ++u)
            out.private_stream[static_cast<std::size_t>(u)] +=
                node.weight * std::log2(1.0 + private_sinr(cfg, u, g)) * f;
    }
    out.sum = out.common;
    for (double p : out.private_stream) out.sum += p;
    return out;
}

AnalyticResult evaluate_fas(const BlockCorrelationModel& model, const RsmaConfig& cfg,
                            const QuadratureSettings& quad) {
    AnalyticResult r;
    const SelectedAmplitude dist(model, quad.outage);
    for (const auto& th : effective_thresholds(cfg)) {
        r.feasible.push_back(th.feasible());
        r.outage.push_back(th.feasible() ? dist.cdf(th.amplitude()) : 1.0);
    }
    r.capacity = average_capacity(model, cfg, quad);
    return r;
}

AnalyticResult evaluate_tas(const RsmaConfig& cfg, double mean_gain, const QuadratureSettings& quad) {
    AnalyticResult r;
    for (const auto& th : effective_thresholds(cfg)) {
        r.feasible.push_back(th.feasible());
        r.outage.push_back(th.feasible() ? outage_probability_tas(mean_gain, th.amplitude()) : 1.0);
    }
    r.capacity = average_capacity_tas(cfg, mean_gain, quad);
    return r;
}

} // namespace fasrsma
