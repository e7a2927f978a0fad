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

#include "fasrsma/fasrsma.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "fasrsma/analytic.hpp"
#include "fasrsma/correlation.hpp"
#include "fasrsma/errors.hpp"
#include "fasrsma/experiments.hpp"
#include "fasrsma/montecarlo.hpp"
#include "fasrsma/rsma.hpp"

struct fasrsma_model {
    fasrsma::FittedModel fit;
    bool fitted = true; // false when built from explicit blocks
};

struct fasrsma_rsma {
    fasrsma::RsmaConfig config;
};

struct fasrsma_sim {
    fasrsma::SimEstimate estimate;
};

struct fasrsma_experiment {
    fasrsma::experiments::ExperimentConfig config;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

fasrsma_status fail(fasrsma_status status, const std::string& message, const std::string& field = {}) {
    g_error = message;
    g_field = field;
    return status;
}

// Maps the library's exception types onto status codes.
template <class F>
fasrsma_status guarded(F&& body) {
    try {
        body();
        g_error.clear();
        g_field.clear();
        return FASRSMA_OK;
    } catch (const fasrsma::ConfigError& e) {
        return fail(FASRSMA_ERR_CONFIG, e.what(), e.field());
    } catch (const fasrsma::ContractViolation& e) {
        return fail(FASRSMA_ERR_NUMERICAL, e.what());
    } catch (const fasrsma::IoError& e) {
        return fail(FASRSMA_ERR_IO, e.what());
    } catch (const fasrsma::Unsupported& e) {
        return fail(FASRSMA_ERR_UNSUPPORTED, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(FASRSMA_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(FASRSMA_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FASRSMA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FASRSMA_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(FASRSMA_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

fasrsma::QuadratureSettings settings(const fasrsma_quadrature* quad, double eta0) {
    if (!quad) return fasrsma::QuadratureSettings::defaults(eta0);
    fasrsma::QuadratureSettings s;
    s.outage = {quad->outage_cutoff, quad->outage_nodes};
    s.outer = {quad->outer_cutoff, quad->outer_nodes};
    s.inner = {quad->inner_cutoff, quad->inner_nodes};
    s.validate();
    return s;
}

void write_capacity(const fasrsma::CapacityResult& c, double* common, double* priv, size_t users, double* sum) {
    require(users == c.private_stream.size(), "user count does not match the operating point");
    if (common) *common = c.common;
    if (priv)
        for (size_t u = 0; u < users; ++u) priv[u] = c.private_stream[u];
    if (sum) *sum = c.sum;
}

fasrsma::SimulationPlan plan_for(int ports, double aperture, double eta0, const char* scheme, uint64_t trials,
                                 uint64_t seed, unsigned workers) {
    require(scheme != nullptr, "scheme is null");
    fasrsma::SimulationPlan plan;
    plan.geometry = {ports, aperture, eta0};
    plan.trials = static_cast<std::size_t>(trials);
    plan.seed = seed;
    plan.workers = workers;
    plan.scheme = fasrsma::parse_scheme(scheme);
    return plan;
}

} // namespace

extern "C" {

const char* fasrsma_version(void) { return "1.0.0"; }

const char* fasrsma_last_error(void) { return g_error.c_str(); }

const char* fasrsma_last_error_field(void) { return g_field.c_str(); }

void fasrsma_string_free(char* text) { std::free(text); }

fasrsma_status fasrsma_quadrature_defaults(double eta0, fasrsma_quadrature* out) {
    return guarded([&] {
        require(out != nullptr, "output pointer is null");
        require(eta0 > 0.0, "eta0 must be positive");
        const auto d = fasrsma::QuadratureSettings::defaults(eta0);
        *out = {d.outage.cutoff, d.outage.nodes, d.outer.cutoff, d.outer.nodes, d.inner.cutoff, d.inner.nodes};
    });
}

fasrsma_status fasrsma_model_fit(int ports, double aperture, double eta0, const char* strategy, int num_blocks,
                                 fasrsma_model** out) {
    return guarded([&] {
        require(out != nullptr && strategy != nullptr, "null pointer argument");
        const fasrsma::ChannelGeometry g{ports, aperture, eta0};
        const auto s = fasrsma::FitStrategy::parse(strategy);
        std::optional<int> d;
        if (num_blocks > 0) d = num_blocks;
        *out = new fasrsma_model{fasrsma::fit_geometry(g, s, d), true};
    });
}

fasrsma_status fasrsma_model_from_blocks(const int* sizes, const double* rhos, size_t count, double eta0,
                                         fasrsma_model** out) {
    return guarded([&] {
        require(out != nullptr && sizes != nullptr && rhos != nullptr, "null pointer argument");
        require(count > 0, "a model needs at least one block");
        fasrsma::FittedModel fit;
        fit.model.mean_gain = eta0;
        for (size_t i = 0; i < count; ++i) fit.model.blocks.push_back({sizes[i], rhos[i]});
        fit.model.validate();
        fit.geometry = {fit.model.num_ports(), 0.0, eta0};
        fit.distance = std::numeric_limits<double>::quiet_NaN();
        *out = new fasrsma_model{std::move(fit), false};
    });
}

fasrsma_status fasrsma_model_read(const char* document, fasrsma_model** out) {
    return guarded([&] {
        require(out != nullptr && document != nullptr, "null pointer argument");
        *out = new fasrsma_model{fasrsma::parse_fit_document(document), true};
    });
}

fasrsma_status fasrsma_model_write(const fasrsma_model* model, char** document) {
    return guarded([&] {
        require(model != nullptr && document != nullptr, "null pointer argument");
        if (!model->fitted) throw fasrsma::Unsupported("only fitted models have a document form");
        *document = copy_string(fasrsma::format_fit_document(model->fit));
    });
}

void fasrsma_model_free(fasrsma_model* model) { delete model; }

fasrsma_status fasrsma_model_block_count(const fasrsma_model* model, size_t* count) {
    return guarded([&] {
        require(model != nullptr && count != nullptr, "null pointer argument");
        *count = model->fit.model.blocks.size();
    });
}

fasrsma_status fasrsma_model_block(const fasrsma_model* model, size_t index, int* size, double* rho) {
    return guarded([&] {
        require(model != nullptr, "model is null");
        const auto& blocks = model->fit.model.blocks;
        if (index >= blocks.size()) throw std::out_of_range("block index out of range");
        if (size) *size = blocks[index].size;
        if (rho) *rho = blocks[index].rho;
    });
}

fasrsma_status fasrsma_model_distance(const fasrsma_model* model, double* distance) {
    return guarded([&] {
        require(model != nullptr && distance != nullptr, "null pointer argument");
        *distance = model->fit.distance;
    });
}

fasrsma_status fasrsma_rsma_create(double snr_db, double t_common, const double* private_split, size_t users,
                                   const double* common_threshold_db, size_t common_count,
                                   const double* private_threshold_db, size_t private_count, fasrsma_rsma** out) {
    return guarded([&] {
        require(out != nullptr && private_split != nullptr && common_threshold_db != nullptr &&
                    private_threshold_db != nullptr,
                "null pointer argument");
        *out = new fasrsma_rsma{fasrsma::RsmaConfig::from_db(snr_db, t_common, {private_split, users},
                                                             {common_threshold_db, common_count},
                                                             {private_threshold_db, private_count})};
    });
}

void fasrsma_rsma_free(fasrsma_rsma* point) { delete point; }

fasrsma_status fasrsma_rsma_users(const fasrsma_rsma* point, size_t* users) {
    return guarded([&] {
        require(point != nullptr && users != nullptr, "null pointer argument");
        *users = static_cast<size_t>(point->config.num_users());
    });
}

fasrsma_status fasrsma_outage(const fasrsma_model* model, const fasrsma_rsma* point, const fasrsma_quadrature* quad,
                              double* outage, size_t users) {
    return guarded([&] {
        require(model != nullptr && point != nullptr && outage != nullptr, "null pointer argument");
        require(users == static_cast<size_t>(point->config.num_users()),
                "user count does not match the operating point");
        const auto& m = model->fit.model;
        const auto q = settings(quad, m.mean_gain);
        const auto th = fasrsma::effective_thresholds(point->config);
        for (size_t u = 0; u < users; ++u) outage[u] = fasrsma::outage_probability(m, th[u], q.outage);
    });
}

fasrsma_status fasrsma_capacity(const fasrsma_model* model, const fasrsma_rsma* point, const fasrsma_quadrature* quad,
                                double* common, double* private_capacity, size_t users, double* sum) {
    return guarded([&] {
        require(model != nullptr && point != nullptr, "null pointer argument");
        const auto& m = model->fit.model;
        write_capacity(fasrsma::average_capacity(m, point->config, settings(quad, m.mean_gain)), common,
                       private_capacity, users, sum);
    });
}

fasrsma_status fasrsma_outage_tas(const fasrsma_rsma* point, double eta0, double* outage, size_t users) {
    return guarded([&] {
        require(point != nullptr && outage != nullptr, "null pointer argument");
        require(users == static_cast<size_t>(point->config.num_users()),
                "user count does not match the operating point");
        require(eta0 > 0.0, "eta0 must be positive");
        const auto th = fasrsma::effective_thresholds(point->config);
        for (size_t u = 0; u < users; ++u) outage[u] = fasrsma::outage_probability_tas(eta0, th[u].amplitude());
    });
}

fasrsma_status fasrsma_capacity_tas(const fasrsma_rsma* point, double eta0, const fasrsma_quadrature* quad,
                                    double* common, double* private_capacity, size_t users, double* sum) {
    return guarded([&] {
        require(point != nullptr, "null pointer argument");
        require(eta0 > 0.0, "eta0 must be positive");
        write_capacity(fasrsma::average_capacity_tas(point->config, eta0, settings(quad, eta0)), common,
                       private_capacity, users, sum);
    });
}

fasrsma_status fasrsma_simulate(int ports, double aperture, double eta0, const char* scheme,
                                const fasrsma_rsma* point, uint64_t trials, uint64_t seed, unsigned workers,
                                fasrsma_sim** out) {
    return guarded([&] {
        require(point != nullptr && out != nullptr, "null pointer argument");
        const auto plan = plan_for(ports, aperture, eta0, scheme, trials, seed, workers);
        if (fasrsma::is_noma(plan.scheme)) throw fasrsma::Unsupported("use fasrsma_simulate_noma for NOMA schemes");
        const fasrsma::RsmaConfig configs[] = {point->config};
        *out = new fasrsma_sim{fasrsma::simulate_points(plan, configs).front()};
    });
}

fasrsma_status fasrsma_simulate_noma(int ports, double aperture, double eta0, const char* scheme, double snr_db,
                                     const double split[2], double threshold_db, uint64_t trials, uint64_t seed,
                                     unsigned workers, fasrsma_sim** out) {
    return guarded([&] {
        require(split != nullptr && out != nullptr, "null pointer argument");
        const auto plan = plan_for(ports, aperture, eta0, scheme, trials, seed, workers);
        if (!fasrsma::is_noma(plan.scheme)) throw fasrsma::Unsupported("use fasrsma_simulate for RSMA schemes");
        fasrsma::NomaConfig cfg;
        cfg.snr = fasrsma::db_to_linear(snr_db);
        cfg.split = {split[0], split[1]};
        cfg.threshold = {fasrsma::db_to_linear(threshold_db), fasrsma::db_to_linear(threshold_db)};
        *out = new fasrsma_sim{fasrsma::run_noma(plan, cfg)};
    });
}

void fasrsma_sim_free(fasrsma_sim* sim) { delete sim; }

fasrsma_status fasrsma_sim_users(const fasrsma_sim* sim, size_t* users) {
    return guarded([&] {
        require(sim != nullptr && users != nullptr, "null pointer argument");
        *users = sim->estimate.outage.size();
    });
}

fasrsma_status fasrsma_sim_user_result(const fasrsma_sim* sim, size_t user, fasrsma_sim_user* out) {
    return guarded([&] {
        require(sim != nullptr && out != nullptr, "null pointer argument");
        const auto& e = sim->estimate;
        if (user >= e.outage.size()) throw std::out_of_range("user index out of range");
        *out = {e.outage[user],
                e.outage_stderr[user],
                e.outage_intersection[user],
                e.private_capacity[user],
                e.private_stderr[user],
                e.feasible[user] ? 1 : 0,
                e.unresolved[user] ? 1 : 0};
    });
}

fasrsma_status fasrsma_sim_summary_result(const fasrsma_sim* sim, fasrsma_sim_summary* out) {
    return guarded([&] {
        require(sim != nullptr && out != nullptr, "null pointer argument");
        const auto& e = sim->estimate;
        *out = {static_cast<uint64_t>(e.trials), e.common_capacity, e.common_stderr, e.sum_capacity, e.sum_stderr};
    });
}

fasrsma_status fasrsma_experiment_parse(const char* document, fasrsma_experiment** out) {
    return guarded([&] {
        require(document != nullptr && out != nullptr, "null pointer argument");
        *out = new fasrsma_experiment{fasrsma::experiments::ExperimentConfig::parse(document)};
    });
}

fasrsma_status fasrsma_experiment_load(const char* path, fasrsma_experiment** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null pointer argument");
        *out = new fasrsma_experiment{fasrsma::experiments::ExperimentConfig::load(path)};
    });
}

void fasrsma_experiment_free(fasrsma_experiment* experiment) { delete experiment; }

fasrsma_status fasrsma_experiment_set(fasrsma_experiment* experiment, const char* key, const char* value) {
    return guarded([&] {
        require(experiment != nullptr && key != nullptr && value != nullptr, "null pointer argument");
        auto updated = experiment->config;
        updated.set(key, value);
        updated.validate();
        experiment->config = std::move(updated);
    });
}

fasrsma_status fasrsma_experiment_canonical(const fasrsma_experiment* experiment, char** text) {
    return guarded([&] {
        require(experiment != nullptr && text != nullptr, "null pointer argument");
        *text = copy_string(experiment->config.canonical());
    });
}

fasrsma_status fasrsma_experiment_output_dir(const fasrsma_experiment* experiment, char** path) {
    return guarded([&] {
        require(experiment != nullptr && path != nullptr, "null pointer argument");
        *path = copy_string(experiment->config.output_dir);
    });
}

fasrsma_status fasrsma_experiment_fit(const fasrsma_experiment* experiment, char** documents) {
    return guarded([&] {
        require(experiment != nullptr && documents != nullptr, "null pointer argument");
        std::string text;
        for (const auto& fit : fasrsma::experiments::fit_models(experiment->config)) {
            if (!text.empty()) text += '\n';
            text += fasrsma::format_fit_document(fit);
        }
        *documents = copy_string(text);
    });
}

fasrsma_status fasrsma_experiment_run(const fasrsma_experiment* experiment, fasrsma_run_mode mode, char** summary) {
    return guarded([&] {
        require(experiment != nullptr, "experiment is null");
        using fasrsma::experiments::RunMode;
        RunMode m;
        switch (mode) {
        case FASRSMA_RUN_ANALYTIC: m = RunMode::Analytic; break;
        case FASRSMA_RUN_MONTE_CARLO: m = RunMode::MonteCarlo; break;
        case FASRSMA_RUN_BOTH: m = RunMode::Both; break;
        default: throw std::invalid_argument("unknown run mode");
        }
        const auto result = fasrsma::experiments::run_experiment(experiment->config, m);
        if (summary) {
            std::ostringstream os;
            for (const auto& panel : result.panels)
                os << experiment->config.output_dir << '/' << panel.file << " (" << panel.rows.size() << " rows)\n";
            *summary = copy_string(os.str());
        }
    });
}

fasrsma_status fasrsma_report(const char* directory, char** text) {
    return guarded([&] {
        require(directory != nullptr && text != nullptr, "null pointer argument");
        *text = copy_string(fasrsma::experiments::compare_report(fasrsma::experiments::load_result(directory)));
    });
}

} // extern "C"
