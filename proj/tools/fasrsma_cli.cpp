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

// Command-line front end. Talks to the library only through the C interface.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fasrsma/fasrsma.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(fasrsma_status status) {
    switch (status) {
    case FASRSMA_OK: return kExitOk;
    case FASRSMA_ERR_CONFIG:
    case FASRSMA_ERR_INVALID_ARGUMENT: return kExitConfig;
    case FASRSMA_ERR_NUMERICAL: return kExitNumerical;
    default: return kExitFailure;
    }
}

struct Failure {
    fasrsma_status status;
};

void check(fasrsma_status status) {
    if (status != FASRSMA_OK) throw Failure{status};
}

struct StringDeleter {
    void operator()(char* s) const { fasrsma_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ExperimentDeleter {
    void operator()(fasrsma_experiment* e) const { fasrsma_experiment_free(e); }
};
using Experiment = std::unique_ptr<fasrsma_experiment, ExperimentDeleter>;

struct Options {
    std::string config;
    std::string out;
    std::vector<std::string> strategies;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    bool has_seed = false;
    bool has_trials = false;
};

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& i : items) s += (s.empty() ? "" : ",") + i;
    return s;
}

void apply(fasrsma_experiment* e, const char* key, const std::string& value) {
    check(fasrsma_experiment_set(e, key, value.c_str()));
}

Experiment open_experiment(const Options& o) {
    fasrsma_experiment* raw = nullptr;
    check(o.config.empty() ? fasrsma_experiment_parse("", &raw) : fasrsma_experiment_load(o.config.c_str(), &raw));
    Experiment e(raw);
    for (const auto& item : o.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", item.c_str());
            throw Failure{FASRSMA_ERR_CONFIG};
        }
        check(fasrsma_experiment_set(e.get(), item.substr(0, eq).c_str(), item.substr(eq + 1).c_str()));
    }
    if (o.has_seed) apply(e.get(), "mc.seed", std::to_string(o.seed));
    if (o.has_trials) apply(e.get(), "mc.trials", std::to_string(o.trials));
    if (!o.out.empty()) apply(e.get(), "output.dir", o.out);
    if (!o.strategies.empty()) {
        // "tas" on its own selects the fixed-antenna scheme only.
        if (o.strategies == std::vector<std::string>{"tas"}) apply(e.get(), "schemes", "tas-rsma");
        apply(e.get(), "strategies", join(o.strategies));
    }
    return e;
}

int run_fit(const Options& o) {
    auto e = open_experiment(o);
    char* docs = nullptr;
    check(fasrsma_experiment_fit(e.get(), &docs));
    OwnedString owned(docs);
    std::fputs(docs, stdout);
    return kExitOk;
}

int run_sweep(const Options& o, fasrsma_run_mode mode) {
    auto e = open_experiment(o);
    char* summary = nullptr;
    check(fasrsma_experiment_run(e.get(), mode, &summary));
    OwnedString owned(summary);
    std::fputs(summary, stdout);
    return kExitOk;
}

int run_report(const Options& o) {
    std::string dir = o.out;
    if (dir.empty()) {
        auto e = open_experiment(o);
        char* path = nullptr;
        check(fasrsma_experiment_output_dir(e.get(), &path));
        dir = OwnedString(path).get();
    }
    char* text = nullptr;
    check(fasrsma_report(dir.c_str(), &text));
    OwnedString owned(text);
    std::fputs(text, stdout);
    return kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "Experiment configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Output directory (overrides output.dir)");
    cmd->add_option("--set", o.overrides, "Override one configuration key, as key=value")->take_all();
}

void add_run_flags(CLI::App* cmd, Options& o) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&o](std::uint64_t v) { o.seed = v; o.has_seed = true; }, "Random seed (overrides mc.seed)");
    cmd->add_option_function<std::uint64_t>(
        "--trials", [&o](std::uint64_t v) { o.trials = v; o.has_trials = true; },
        "Monte Carlo trials per point (overrides mc.trials)");
    cmd->add_option("--strategy", o.strategies, "Correlation strategy: cbc, cbc:<rho>, vbc or tas (repeatable)")
        ->take_all()
        ->delimiter(',');
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage and capacity of rate-splitting over fluid antenna channels"};
    app.set_version_flag("--version", fasrsma_version());
    app.require_subcommand(1);

    Options o;
    auto* fit = app.add_subcommand("fit", "Print the fitted block-correlation model of every (N, W, strategy)");
    auto* analytic = app.add_subcommand("analytic", "Closed-form sweep, written as CSV");
    auto* mc = app.add_subcommand("mc", "Monte Carlo sweep, written as CSV");
    auto* sweep = app.add_subcommand("sweep", "Closed-form and Monte Carlo sweep, written as CSV");
    auto* report = app.add_subcommand("report", "Compare closed-form and Monte Carlo columns of a finished sweep");
    for (auto* cmd : {fit, analytic, mc, sweep, report}) add_common(cmd, o);
    for (auto* cmd : {fit, analytic, mc, sweep}) add_run_flags(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (fit->parsed()) return run_fit(o);
        if (analytic->parsed()) return run_sweep(o, FASRSMA_RUN_ANALYTIC);
        if (mc->parsed()) return run_sweep(o, FASRSMA_RUN_MONTE_CARLO);
        if (sweep->parsed()) return run_sweep(o, FASRSMA_RUN_BOTH);
        return run_report(o);
    } catch (const Failure& f) {
        const std::string message = fasrsma_last_error();
        if (!message.empty()) std::fprintf(stderr, "error: %s\n", message.c_str());
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
}
