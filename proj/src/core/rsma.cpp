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

#include "fasrsma/rsma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fasrsma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

// Smallest g with snr*share*g / (snr*rest*g + 1) >= target.
double gain_threshold(double snr, double share, double rest, double target) {
    const double denom = share - target * rest;
    if (denom <= kFeasibilityTolerance) return kInf;
    return target / (snr * denom);
}

std::vector<double> broadcast(std::span<const double> db, std::size_t users, const char* what) {
    if (db.size() != 1 && db.size() != users)
        throw std::invalid_argument(std::string(what) + ": need one value or one per user");
    std::vector<double> out(users);
    for (std::size_t u = 0; u < users; ++u) out[u] = db_to_linear(db[db.size() == 1 ? 0 : u]);
    return out;
}

} // namespace

double db_to_linear(double db) {
    if (!std::isfinite(db)) throw std::invalid_argument("dB value must be finite");
    return std::pow(10.0, db / 10.0);
}

void RsmaConfig::validate() const {
    const auto users = t_private.size();
    if (users < 1) throw std::invalid_argument("RSMA config needs at least one user");
    if (common_threshold.size() != users || private_threshold.size() != users)
        throw std::invalid_argument("RSMA thresholds must have one entry per user");
    if (!positive_finite(snr)) throw std::invalid_argument("SNR must be positive");
    if (!(t_common > 0.0 && t_common < 1.0))
        throw std::invalid_argument("common power fraction must lie in (0, 1)");
    double total = t_common;
    for (double t : t_private) {
        if (!positive_finite(t)) throw std::invalid_argument("private power fractions must be positive");
        total += t;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("power fractions must add up to one");
    for (std::size_t u = 0; u < users; ++u) {
        if (!(common_threshold[u] >= 0.0) || !std::isfinite(common_threshold[u]) ||
            !(private_threshold[u] >= 0.0) || !std::isfinite(private_threshold[u]))
            throw std::invalid_argument("SINR thresholds must be finite and non-negative");
    }
}

RsmaConfig RsmaConfig::from_db(double snr_db, double t_common, std::span<const double> private_split,
                               std::span<const double> common_threshold_db,
                               std::span<const double> private_threshold_db) {
    if (private_split.empty()) throw std::invalid_argument("private split needs at least one user");
    double share_total = 0.0;
    for (double s : private_split) {
        if (!positive_finite(s)) throw std::invalid_argument("private split shares must be positive");
        share_total += s;
    }
    if (std::abs(share_total - 1.0) > 1e-9)
        throw std::invalid_argument("private split shares must add up to one");
    RsmaConfig cfg;
    cfg.snr = db_to_linear(snr_db);
    cfg.t_common = t_common;
    const double rest = 1.0 - t_common;
    // The last share absorbs rounding so the fractions add up to one exactly.
    double used = 0.0;
    for (std::size_t u = 0; u + 1 < private_split.size(); ++u) {
        cfg.t_private.push_back(private_split[u] / share_total * rest);
        used += cfg.t_private.back();
    }
    cfg.t_private.push_back(rest - used);
    cfg.common_threshold = broadcast(common_threshold_db, private_split.size(), "common threshold");
    cfg.private_threshold = broadcast(private_threshold_db, private_split.size(), "private threshold");
    cfg.validate();
    return cfg;
}

bool EffectiveThreshold::feasible() const noexcept {
    return std::isfinite(common) && std::isfinite(private_stream);
}

double EffectiveThreshold::gain() const noexcept { return std::max(common, private_stream); }

double EffectiveThreshold::intersection_gain() const noexcept {
    return std::min(common, private_stream);
}

double EffectiveThreshold::amplitude() const noexcept { return std::sqrt(gain()); }

double common_sinr(const RsmaConfig& cfg, double gain) {
    const double s = cfg.snr * gain;
    return s * cfg.t_common / (s * (1.0 - cfg.t_common) + 1.0);
}

double private_sinr(const RsmaConfig& cfg, int user, double gain) {
    if (user < 0 || user >= cfg.num_users()) throw std::out_of_range("user index out of range");
    const double t = cfg.t_private[static_cast<std::size_t>(user)];
    const double s = cfg.snr * gain;
    return s * t / (s * (1.0 - cfg.t_common - t) + 1.0);
}

std::vector<EffectiveThreshold> effective_thresholds(const RsmaConfig& cfg) {
    cfg.validate();
    double private_total = 0.0;
    for (double t : cfg.t_private) private_total += t;
    std::vector<EffectiveThreshold> out;
    out.reserve(cfg.t_private.size());
    for (std::size_t u = 0; u < cfg.t_private.size(); ++u) {
        const double t = cfg.t_private[u];
        EffectiveThreshold th;
        th.common = gain_threshold(cfg.snr, cfg.t_common, private_total, cfg.common_threshold[u]);
        th.private_stream = gain_threshold(cfg.snr, t, private_total - t, cfg.private_threshold[u]);
        out.push_back(th);
    }
    return out;
}

int weakest_user(std::span<const double> gains) {
    if (gains.empty()) throw std::invalid_argument("no gains given");
    return static_cast<int>(std::min_element(gains.begin(), gains.end()) - gains.begin());
}

InstantaneousRates instantaneous_rates(const RsmaConfig& cfg, std::span<const double> gains) {
    if (static_cast<int>(gains.size()) != cfg.num_users())
        throw std::invalid_argument("need one gain per user");
    InstantaneousRates r;
    for (int u = 0; u < cfg.num_users(); ++u) {
        const double g = gains[static_cast<std::size_t>(u)];
        if (!(g >= 0.0)) throw std::invalid_argument("gains must be non-negative");
        r.common.push_back(std::log2(1.0 + common_sinr(cfg, g)));
        r.private_stream.push_back(std::log2(1.0 + private_sinr(cfg, u, g)));
    }
    r.weakest_user = weakest_user(gains);
    r.common_rate = r.common[static_cast<std::size_t>(r.weakest_user)];
    r.sum = r.common_rate;
    for (double p : r.private_stream) r.sum += p;
    return r;
}

void NomaConfig::validate() const {
    if (!positive_finite(snr)) throw std::invalid_argument("SNR must be positive");
    if (!(split[0] >= 0.0 && split[1] >= 0.0) || std::abs(split[0] + split[1] - 1.0) > 1e-12)
        throw std::invalid_argument("NOMA power split must be non-negative and add up to one");
    for (double th : threshold)
        if (!(th >= 0.0) || !std::isfinite(th))
            throw std::invalid_argument("NOMA thresholds must be finite and non-negative");
}

std::array<double, 2> noma_gain_thresholds(const NomaConfig& cfg) {
    cfg.validate();
    const double first = gain_threshold(cfg.snr, cfg.split[0], cfg.split[1], cfg.threshold[0]);
    double own = 0.0;
    if (cfg.threshold[1] > 0.0)
        own = cfg.split[1] <= kFeasibilityTolerance ? kInf : cfg.threshold[1] / (cfg.snr * cfg.split[1]);
    return {first, std::max(first, own)};
}

std::array<double, 2> noma_rates(const NomaConfig& cfg, std::array<double, 2> gains) {
    const double s1 = cfg.snr * gains[0];
    const double s2 = cfg.snr * gains[1];
    return {std::log2(1.0 + s1 * cfg.split[0] / (s1 * cfg.split[1] + 1.0)),
            std::log2(1.0 + s2 * cfg.split[1])};
}

} // namespace fasrsma
