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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fasrsma/analytic.hpp"
#include "fasrsma/correlation.hpp"
#include "fasrsma/montecarlo.hpp"

namespace fasrsma::experiments {

enum class Axis { SnrDb, CommonFraction, PrivateShare };
enum class BlockCountMode { MinDistance, Dominant, Fixed };
enum class RunMode { Analytic, MonteCarlo, Both };

std::string axis_name(Axis axis); // "snr_db", "t_c", "t_p1"
std::string mode_name(RunMode mode);

// Flat "section.key = value" document. Lists are comma separated; '#' starts
// a comment. Every key is optional and unknown keys are rejected.
struct ExperimentConfig {
    std::vector<int> ports{10};
    std::vector<double> apertures{8.0};
    double mean_gain = 1.0;
    std::string covariance_file; // replaces the Jakes covariance; single N and W only

    int users = 2;
    double t_common = 0.7;
    std::vector<double> private_split{0.6, 0.4};
    std::vector<double> common_threshold_db{0.0};   // one panel per value
    std::vector<double> private_threshold_db{-6.5}; // one panel per value

    Axis axis = Axis::SnrDb;
    std::optional<double> sweep_start, sweep_stop, sweep_step;
    std::optional<std::vector<double>> sweep_values; // overrides start/stop/step
    double snr_db = 20.0; // fixed SNR for the power-split axes

    std::vector<Scheme> schemes{Scheme::FasRsma};
    std::vector<FitStrategy> strategies{FitStrategy::constant(0.97), FitStrategy::variable()};
    bool tas_strategy = false; // "tas" listed among the strategies

    double quad_cutoff_factor = 8.0; // cutoff = factor * sqrt(eta0)
    int quad_nodes = 30;
    int quad_outer_nodes = 30;
    int quad_inner_nodes = 30;

    std::size_t trials = 1'000'000;
    std::uint64_t seed = 42;
    unsigned workers = 0;

    std::string output_dir = "out";

    BlockCountMode block_count = BlockCountMode::MinDistance;
    int fixed_blocks = 0;
    bool fit_cache = true;

    std::array<double, 2> noma_split{0.6, 0.4};
    double noma_threshold_db = 0.0;

    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    // Throws ConfigError naming the offending key.
    void validate() const;

    // Every setting, one "key = value" line each, in a fixed order.
    std::string canonical() const;
    // FNV-1a over canonical().
    std::uint64_t hash() const;

    // Applies a single "key = value" assignment, as in the document.
    void set(const std::string& key, const std::string& value);

    // Axis points in sweep order. The SNR axis defaults to 0..40 dB in
    // 2.5 dB steps; the power-split axes need an explicit grid.
    std::vector<double> grid() const;

    QuadratureSettings quadrature() const;
    bool runs_tas_rsma() const;
};

struct SweepRow {
    double axis_value = 0.0;
    Scheme scheme = Scheme::FasRsma;
    std::string strategy;
    int user = 1; // 1-based
    std::optional<double> op_analytic;
    std::optional<double> op_mc;
    std::optional<double> op_mc_stderr;
    std::optional<double> c_common;
    std::optional<double> c_private;
    std::optional<double> c_sum;
    bool feasible = true;
    std::optional<double> fit_distance;

    bool operator==(const SweepRow&) const = default;
};

struct Panel {
    int ports = 0;
    double aperture = 0.0;
    double mean_gain = 1.0;
    double common_threshold_db = 0.0;
    double private_threshold_db = 0.0;
    Axis axis = Axis::SnrDb;
    RunMode mode = RunMode::Both;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string file;
    std::vector<SweepRow> rows;

    bool operator==(const Panel&) const = default;
};

struct SweepResult {
    std::vector<Panel> panels;
};

// Reals are kept at 12 significant digits so the CSV text is exact.
double quantize(double value);

std::string format_panel_csv(const Panel& panel);
Panel parse_panel_csv(const std::string& text);

// Runs every panel of the config and writes one CSV per panel plus
// manifest.txt into the output directory. Nothing is written when the config
// is invalid.
SweepResult run_experiment(const ExperimentConfig& config, RunMode mode);

// Reads back the panels listed in <dir>/manifest.txt.
SweepResult load_result(const std::string& dir);

// Block-model documents for every (N, W, strategy) of the config.
std::vector<FittedModel> fit_models(const ExperimentConfig& config);

// Analytic-vs-simulation summary. Throws std::invalid_argument when no
// strategy has both columns.
std::string compare_report(const SweepResult& result);

} // namespace fasrsma::experiments
