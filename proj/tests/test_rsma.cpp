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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fasrsma/rsma.hpp"

using namespace fasrsma;
using doctest::Approx;

namespace {

RsmaConfig paper_config(double snr_linear, double common_th = 1.0, double private_th = 0.22387211385683395) {
    RsmaConfig cfg;
    cfg.snr = snr_linear;
    cfg.t_common = 0.7;
    cfg.t_private = {0.18, 0.12};
    cfg.common_threshold = {common_th, common_th};
    cfg.private_threshold = {private_th, private_th};
    return cfg;
}

} // namespace

TEST_CASE("db conversion") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(-6.5) == Approx(0.22387211385683395).epsilon(1e-15));
    CHECK(db_to_linear(20.0) == Approx(100.0).epsilon(1e-15));
    CHECK_THROWS_AS(db_to_linear(std::nan("")), std::invalid_argument);
}

TEST_CASE("common sinr") {
    const auto cfg = paper_config(10.0);
    CHECK(common_sinr(cfg, 0.0) == 0.0);
    CHECK(common_sinr(cfg, 1.0) == Approx(1.75).epsilon(1e-15));
    CHECK(common_sinr(cfg, 1e12) == Approx(7.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("private sinr") {
    const auto cfg = paper_config(10.0);
    CHECK(private_sinr(cfg, 0, 0.0) == 0.0);
    CHECK(private_sinr(cfg, 0, 1.0) == Approx(1.8 / 2.2).epsilon(1e-15));
    CHECK(private_sinr(cfg, 1, 2.0) == Approx(2.4 / 4.6).epsilon(1e-15));
    auto sym = cfg;
    sym.t_private = {0.15, 0.15};
    for (double g : {0.1, 1.0, 7.0}) CHECK(private_sinr(sym, 0, g) == private_sinr(sym, 1, g));
    CHECK_THROWS_AS(private_sinr(cfg, 2, 1.0), std::out_of_range);
}

TEST_CASE("sinrs increase with gain") {
    const auto cfg = paper_config(31.6);
    double pc = -1.0, p0 = -1.0, p1 = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        const double g = 0.005 * i;
        CHECK(common_sinr(cfg, g) > pc);
        CHECK(private_sinr(cfg, 0, g) > p0);
        CHECK(private_sinr(cfg, 1, g) > p1);
        pc = common_sinr(cfg, g);
        p0 = private_sinr(cfg, 0, g);
        p1 = private_sinr(cfg, 1, g);
    }
}

TEST_CASE("only the snr ratio matters") {
    // Scaling transmit power and noise together leaves every SINR unchanged.
    for (double scale : {1.0, 3.0, 1e3}) {
        const double power = 2.0 * scale, noise = 0.5 * scale;
        const auto a = paper_config(power / noise);
        const auto b = paper_config(4.0);
        CHECK(common_sinr(a, 0.8) == common_sinr(b, 0.8));
        CHECK(private_sinr(a, 1, 0.8) == private_sinr(b, 1, 0.8));
    }
}

TEST_CASE("effective thresholds") {
    const auto th = effective_thresholds(paper_config(10.0));
    REQUIRE(th.size() == 2);
    CHECK(th[0].common == Approx(0.25).epsilon(1e-14));
    CHECK(th[0].private_stream == Approx(0.1461923188940996).epsilon(1e-13));
    CHECK(th[0].feasible());
    CHECK(th[0].gain() == th[0].common);
    CHECK(th[0].amplitude() == Approx(0.5).epsilon(1e-14));
    CHECK(th[1].private_stream == Approx(0.22387211385683395 / (10.0 * (0.12 - 0.18 * 0.22387211385683395))).epsilon(1e-13));

    // Common target at its reachable limit t_c / sum(t_u).
    const auto edge = effective_thresholds(paper_config(10.0, 0.7 / 0.3));
    CHECK_FALSE(edge[0].feasible());
    CHECK(std::isinf(edge[0].gain()));
    CHECK(std::isfinite(edge[0].intersection_gain()));

    const auto zero = effective_thresholds(paper_config(10.0, 0.0, 0.0));
    CHECK(zero[0].gain() == 0.0);
}

TEST_CASE("stage outages match the gain thresholds") {
    for (double snr_db : {0.0, 7.5, 20.0}) {
        for (double cth_db : {-1.0, 0.0, 2.0}) {
            const auto cfg = paper_config(db_to_linear(snr_db), db_to_linear(cth_db));
            const auto th = effective_thresholds(cfg);
            for (int u = 0; u < 2; ++u) {
                const auto& t = th[static_cast<std::size_t>(u)];
                const double ct = cfg.common_threshold[static_cast<std::size_t>(u)];
                const double pt = cfg.private_threshold[static_cast<std::size_t>(u)];
                for (int i = 0; i <= 4000; ++i) {
                    const double g = 0.0011 * i;
                    const auto near = [&](double x) { return std::isfinite(x) && std::abs(g - x) < 1e-9 * (1 + x); };
                    if (near(t.common) || near(t.private_stream)) continue;
                    const bool common_fails = common_sinr(cfg, g) < ct;
                    const bool private_fails = private_sinr(cfg, u, g) < pt;
                    CHECK(common_fails == (g < t.common));
                    CHECK(private_fails == (g < t.private_stream));
                    CHECK((common_fails || private_fails) == (g < t.gain()));
                    CHECK((common_fails && private_fails) == (g < t.intersection_gain()));
                }
            }
        }
    }
}

TEST_CASE("instantaneous rates") {
    const auto cfg = paper_config(10.0);
    const std::vector<double> zero{0.0, 0.0};
    CHECK(instantaneous_rates(cfg, zero).sum == 0.0);
    CHECK(instantaneous_rates(cfg, zero).weakest_user == 0);

    const std::vector<double> g{1.0, 2.0};
    const auto r = instantaneous_rates(cfg, g);
    CHECK(r.weakest_user == 0);
    const double expected = std::log2(1.0 + common_sinr(cfg, 1.0)) + std::log2(1.0 + private_sinr(cfg, 0, 1.0)) +
                            std::log2(1.0 + private_sinr(cfg, 1, 2.0));
    CHECK(r.sum == Approx(expected).epsilon(1e-15));
    CHECK(r.sum == Approx(std::log2(2.75) + std::log2(1.0 + 1.8 / 2.2) + std::log2(1.0 + 2.4 / 4.6)).epsilon(1e-14));

    const std::vector<double> tie{1.5, 1.5};
    CHECK(instantaneous_rates(cfg, tie).weakest_user == 0);
    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(instantaneous_rates(cfg, wrong), std::invalid_argument);
}

TEST_CASE("weakest rate user is the weakest gain user") {
    auto cfg = paper_config(100.0);
    cfg.t_private = {0.1, 0.1, 0.1};
    cfg.common_threshold.assign(3, 1.0);
    cfg.private_threshold.assign(3, 0.5);
    unsigned state = 12345;
    for (int i = 0; i < 500; ++i) {
        std::vector<double> g(3);
        for (auto& x : g) {
            state = state * 1103515245u + 12345u;
            x = (state >> 8) / 16777216.0 * 4.0;
        }
        const auto r = instantaneous_rates(cfg, g);
        int argmin_rate = 0;
        for (int u = 1; u < 3; ++u)
            if (r.common[static_cast<std::size_t>(u)] < r.common[static_cast<std::size_t>(argmin_rate)]) argmin_rate = u;
        CHECK(r.weakest_user == argmin_rate);
    }
}

TEST_CASE("config construction from dB") {
    const std::vector<double> split{0.6, 0.4}, c{0.0}, p{-6.5};
    const auto cfg = RsmaConfig::from_db(10.0, 0.7, split, c, p);
    CHECK(cfg.snr == Approx(10.0).epsilon(1e-15));
    CHECK(cfg.t_private[0] == Approx(0.18).epsilon(1e-15));
    CHECK(cfg.t_private[1] == Approx(0.12).epsilon(1e-14));
    CHECK(cfg.t_common + cfg.t_private[0] + cfg.t_private[1] == Approx(1.0).epsilon(1e-15));
    CHECK(cfg.private_threshold[1] == Approx(0.22387211385683395).epsilon(1e-15));

    const std::vector<double> bad_split{0.6, 0.6}, three{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(RsmaConfig::from_db(10.0, 0.7, bad_split, c, p), std::invalid_argument);
    CHECK_THROWS_AS(RsmaConfig::from_db(10.0, 1.0, split, c, p), std::invalid_argument);
    CHECK_THROWS_AS(RsmaConfig::from_db(10.0, 0.7, split, three, p), std::invalid_argument);
    auto broken = cfg;
    broken.t_private[0] += 1e-6;
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("noma thresholds") {
    NomaConfig cfg;
    cfg.snr = 10.0;
    const auto th = noma_gain_thresholds(cfg);
    CHECK(th[0] == Approx(1.0 / (10.0 * (0.6 - 0.4))).epsilon(1e-14));
    CHECK(th[1] == th[0]);
    cfg.threshold = {0.2, 1.0};
    const auto th2 = noma_gain_thresholds(cfg);
    CHECK(th2[1] == Approx(1.0 / (10.0 * 0.4)).epsilon(1e-14));
    cfg.split = {1.0, 0.0};
    CHECK(std::isinf(noma_gain_thresholds(cfg)[1]));
    cfg.split = {0.3, 0.3};
    CHECK_THROWS_AS(noma_gain_thresholds(cfg), std::invalid_argument);

    NomaConfig r;
    r.snr = 10.0;
    const auto rates = noma_rates(r, {1.0, 2.0});
    CHECK(rates[0] == Approx(std::log2(1.0 + 6.0 / 5.0)).epsilon(1e-14));
    CHECK(rates[1] == Approx(std::log2(1.0 + 8.0)).epsilon(1e-14));
}
