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

#include "fasrsma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "fasrsma/errors.hpp"
#include "parallel.hpp"

namespace fasrsma {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Running sums for one operating point over a chunk of trials.
struct PointSums {
    std::vector<std::size_t> outage, intersection;
    std::vector<double> gain;
    double common = 0.0, common_sq = 0.0;
    std::vector<double> priv, priv_sq;
    double sum = 0.0, sum_sq = 0.0;

    explicit PointSums(std::size_t users)
        : outage(users), intersection(users), gain(users), priv(users), priv_sq(users) {}

    void merge(const PointSums& o) {
        for (std::size_t u = 0; u < outage.size(); ++u) {
            outage[u] += o.outage[u];
            intersection[u] += o.intersection[u];
            gain[u] += o.gain[u];
            priv[u] += o.priv[u];
            priv_sq[u] += o.priv_sq[u];
        }
        common += o.common;
        common_sq += o.common_sq;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
};

double mean_stderr(double s, double sq, double n, double& mean) {
    mean = s / n;
    if (n < 2.0) return 0.0;
    const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
}

SimEstimate finish(const PointSums& s, std::size_t trials, const std::vector<bool>& feasible,
                   bool has_common) {
    const auto users = s.outage.size();
    const double n = static_cast<double>(trials);
    SimEstimate e;
    e.trials = trials;
    e.feasible = feasible;
    for (std::size_t u = 0; u < users; ++u) {
        const double p = static_cast<double>(s.outage[u]) / n;
        e.outage.push_back(p);
        e.outage_stderr.push_back(std::sqrt(p * (1.0 - p) / n));
        e.outage_intersection.push_back(static_cast<double>(s.intersection[u]) / n);
        e.unresolved.push_back(s.outage[u] < 10);
        e.mean_gain.push_back(s.gain[u] / n);
        double m = 0.0;
        e.private_stderr.push_back(mean_stderr(s.priv[u], s.priv_sq[u], n, m));
        e.private_capacity.push_back(m);
    }
    if (has_common) {
        e.common_stderr = mean_stderr(s.common, s.common_sq, n, e.common_capacity);
    } else {
        e.common_capacity = kNaN;
        e.common_stderr = kNaN;
    }
    e.sum_stderr = mean_stderr(s.sum, s.sum_sq, n, e.sum_capacity);
    return e;
}

// Shared driver: splits the trials into fixed chunks, lets `trial` update the
// per-point sums and merges chunks in index order so the result does not
// depend on the worker count.
template <class TrialFn>
std::vector<PointSums> run_chunks(const SimulationPlan& plan, int users, std::size_t points,
                                  TrialFn&& trial) {
    plan.validate();
    const auto cov = plan.port_covariance();
    const std::size_t chunks = (plan.trials + plan.chunk - 1) / plan.chunk;
    const unsigned workers = detail::resolve_workers(plan.workers, chunks);
    std::vector<std::unique_ptr<ChannelDrawer>> drawers(workers);
    for (auto& d : drawers)
        d = std::make_unique<ChannelDrawer>(cov, plan.geometry.mean_gain, plan.seed, users);

    const std::vector<PointSums> blank(points, PointSums(static_cast<std::size_t>(users)));
    std::vector<std::vector<PointSums>> partial(chunks, blank);
    const bool select = uses_port_selection(plan.scheme);
    detail::parallel_for(chunks, workers, [&](std::size_t c, unsigned w) {
        auto& drawer = *drawers[w];
        std::vector<double> selected(static_cast<std::size_t>(users)), first(static_cast<std::size_t>(users));
        auto& sums = partial[c];
        const std::size_t begin = c * plan.chunk;
        const std::size_t end = std::min(plan.trials, begin + plan.chunk);
        for (std::size_t t = begin; t < end; ++t) {
            drawer.draw(t, selected, first);
            trial(select ? selected : first, sums);
        }
    });
    std::vector<PointSums> total = blank;
    for (const auto& chunk : partial)
        for (std::size_t p = 0; p < points; ++p) total[p].merge(chunk[p]);
    return total;
}

} // namespace

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::FasRsma: return "fas-rsma";
    case Scheme::TasRsma: return "tas-rsma";
    case Scheme::FasNoma: return "fas-noma";
    case Scheme::TasNoma: return "tas-noma";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& text) {
    for (auto s : {Scheme::FasRsma, Scheme::TasRsma, Scheme::FasNoma, Scheme::TasNoma})
        if (scheme_name(s) == text) return s;
    throw std::invalid_argument("unknown scheme '" + text + "'");
}

bool is_noma(Scheme scheme) noexcept { return scheme == Scheme::FasNoma || scheme == Scheme::TasNoma; }

bool uses_port_selection(Scheme scheme) noexcept {
    return scheme == Scheme::FasRsma || scheme == Scheme::FasNoma;
}

ChannelDrawer::ChannelDrawer(const CovarianceMatrix& cov, double mean_gain, std::uint64_t seed,
                             int num_users)
    : sampler_(cov, mean_gain), rng_(seed), num_users_(num_users) {
    if (num_users < 1) throw std::invalid_argument("need at least one user");
    white_.resize(static_cast<std::size_t>(sampler_.num_ports()));
    port_.resize(white_.size());
}

void ChannelDrawer::draw(std::uint64_t trial, std::span<double> selected, std::span<double> first_port) {
    const auto n = white_.size();
    const double eta0 = sampler_.mean_gain();
    for (int u = 0; u < num_users_; ++u) {
        for (std::size_t k = 0; k < n; ++k)
            white_[k] = rng_.complex_normal(trial, static_cast<std::uint32_t>(static_cast<std::size_t>(u) * n + k), eta0);
        sampler_.correlate(white_, port_);
        double best = std::norm(port_[0]);
        const double first = best;
        for (std::size_t k = 1; k < n; ++k) best = std::max(best, std::norm(port_[k]));
        selected[static_cast<std::size_t>(u)] = best;
        first_port[static_cast<std::size_t>(u)] = first;
    }
}

void SimulationPlan::validate() const {
    geometry.validate();
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (chunk < 1) throw std::invalid_argument("chunk size must be positive");
    if (covariance && covariance->size() != geometry.num_ports)
        throw std::invalid_argument("covariance size does not match the port count");
}

CovarianceMatrix SimulationPlan::port_covariance() const {
    if (covariance) return *covariance;
    if (geometry.num_ports == 1) return CovarianceMatrix::identity(1);
    return build_jakes_covariance(geometry);
}

std::vector<SimEstimate> simulate_points(const SimulationPlan& plan, std::span<const RsmaConfig> configs) {
    if (is_noma(plan.scheme)) throw std::invalid_argument("NOMA plans go through simulate_noma_points");
    if (configs.empty()) return {};
    const int users = configs[0].num_users();
    struct Point {
        const RsmaConfig* cfg;
        std::vector<double> union_gain, intersection_gain;
    };
    std::vector<Point> pts;
    for (const auto& cfg : configs) {
        if (cfg.num_users() != users) throw std::invalid_argument("all points need the same user count");
        Point p{&cfg, {}, {}};
        for (const auto& th : effective_thresholds(cfg)) {
            p.union_gain.push_back(th.gain());
            p.intersection_gain.push_back(th.intersection_gain());
        }
        pts.push_back(std::move(p));
    }
    auto totals = run_chunks(plan, users, pts.size(), [&](std::span<const double> g, std::vector<PointSums>& sums) {
        const double weakest = *std::min_element(g.begin(), g.end());
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const auto& pt = pts[p];
            auto& s = sums[p];
            const double rc = std::log2(1.0 + common_sinr(*pt.cfg, weakest));
            double total = rc;
            s.common += rc;
            s.common_sq += rc * rc;
            for (int u = 0; u < users; ++u) {
                const auto k = static_cast<std::size_t>(u);
                s.outage[k] += g[k] < pt.union_gain[k];
                s.intersection[k] += g[k] < pt.intersection_gain[k];
                s.gain[k] += g[k];
                const double rp = std::log2(1.0 + private_sinr(*pt.cfg, u, g[k]));
                s.priv[k] += rp;
                s.priv_sq[k] += rp * rp;
                total += rp;
            }
            s.sum += total;
            s.sum_sq += total * total;
        }
    });
    std::vector<SimEstimate> out;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        std::vector<bool> feasible;
        for (std::size_t u = 0; u < pts[p].union_gain.size(); ++u) feasible.push_back(std::isfinite(pts[p].union_gain[u]) && std::isfinite(pts[p].intersection_gain[u]));
        out.push_back(finish(totals[p], plan.trials, feasible, true));
    }
    return out;
}

SimEstimate run_fas_rsma(SimulationPlan plan, const RsmaConfig& cfg) {
    plan.scheme = Scheme::FasRsma;
    return simulate_points(plan, std::span(&cfg, 1)).front();
}

SimEstimate run_tas_rsma(SimulationPlan plan, const RsmaConfig& cfg) {
    plan.scheme = Scheme::TasRsma;
    return simulate_points(plan, std::span(&cfg, 1)).front();
}

std::vector<SimEstimate> simulate_noma_points(const SimulationPlan& plan, std::span<const NomaConfig> configs) {
    if (!is_noma(plan.scheme)) throw std::invalid_argument("RSMA plans go through simulate_points");
    if (configs.empty()) return {};
    std::vector<std::array<double, 2>> thresholds;
    for (const auto& cfg : configs) thresholds.push_back(noma_gain_thresholds(cfg));
    auto totals = run_chunks(plan, 2, configs.size(), [&](std::span<const double> g, std::vector<PointSums>& sums) {
        for (std::size_t p = 0; p < configs.size(); ++p) {
            auto& s = sums[p];
            const auto rates = noma_rates(configs[p], {g[0], g[1]});
            for (std::size_t k = 0; k < 2; ++k) {
                const bool out = g[k] < thresholds[p][k];
                s.outage[k] += out;
                s.intersection[k] += out;
                s.gain[k] += g[k];
                s.priv[k] += rates[k];
                s.priv_sq[k] += rates[k] * rates[k];
            }
            const double total = rates[0] + rates[1];
            s.sum += total;
            s.sum_sq += total * total;
        }
    });
    std::vector<SimEstimate> out;
    for (std::size_t p = 0; p < configs.size(); ++p)
        out.push_back(finish(totals[p], plan.trials,
                             {std::isfinite(thresholds[p][0]), std::isfinite(thresholds[p][1])}, false));
    return out;
}

SimEstimate run_noma(const SimulationPlan& plan, const NomaConfig& cfg) {
    if (!is_noma(plan.scheme)) throw std::invalid_argument("plan scheme is not NOMA");
    return simulate_noma_points(plan, std::span(&cfg, 1)).front();
}

} // namespace fasrsma
