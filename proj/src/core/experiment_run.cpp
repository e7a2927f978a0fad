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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "fasrsma/errors.hpp"
#include "fasrsma/experiments.hpp"
#include "parallel.hpp"

namespace fasrsma::experiments {

namespace fs = std::filesystem;

namespace {

const char* const kHeader =
    "axis_value,scheme,strategy,user,op_analytic,op_mc,op_mc_stderr,c_common,c_private,c_sum,feasible,fit_distance";

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string short_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::optional<double> q(double v) {
    if (std::isnan(v)) return std::nullopt;
    return quantize(v);
}

std::string field(const std::optional<double>& v) { return v ? g12(*v) : std::string{}; }

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strategy_key(const FitStrategy& s) { return s.label(); }

std::string block_rule_key(const ExperimentConfig& c) {
    switch (c.block_count) {
    case BlockCountMode::MinDistance: return "auto";
    case BlockCountMode::Dominant: return "eigen";
    case BlockCountMode::Fixed: return "D" + std::to_string(c.fixed_blocks);
    }
    return "auto";
}

// Whitespace or comma separated rows; '#' starts a comment.
std::optional<CovarianceMatrix> load_covariance(const ExperimentConfig& c) {
    if (c.covariance_file.empty()) return std::nullopt;
    const char* key = "geometry.covariance";
    std::ifstream in(c.covariance_file);
    if (!in) throw ConfigError(key, "cannot read '" + c.covariance_file + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (*end != '\0' || !std::isfinite(v)) throw ConfigError(key, "bad matrix entry '" + tok + "'");
            row.push_back(v);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const auto n = rows.size();
    if (n == 0) throw ConfigError(key, "matrix is empty");
    if (static_cast<int>(n) != c.ports.front())
        throw ConfigError(key, "matrix has " + std::to_string(n) + " rows but geometry.N = " +
                                   std::to_string(c.ports.front()));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) throw ConfigError(key, "matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return CovarianceMatrix(std::move(m));
}

FittedModel fresh_fit(const ExperimentConfig& c, int n, double w, const FitStrategy& s,
                      const std::optional<CovarianceMatrix>& cov = std::nullopt) {
    const ChannelGeometry g{n, w, c.mean_gain};
    std::optional<int> d;
    auto rule = BlockCountRule::MinDistance;
    if (c.block_count == BlockCountMode::Fixed) d = c.fixed_blocks;
    if (c.block_count == BlockCountMode::Dominant) rule = BlockCountRule::DominantEigenvalues;
    return cov ? fit_covariance(*cov, g, s, d, rule) : fit_geometry(g, s, d, rule);
}

// Fits are cached as text documents under <out>/fits. A cached document is
// used only when it describes the same geometry and strategy.
class FitCache {
public:
    FitCache(const ExperimentConfig& c, std::optional<CovarianceMatrix> cov)
        : config_(c), covariance_(std::move(cov)), use_disk_(c.fit_cache && !covariance_) {}

    const std::optional<CovarianceMatrix>& covariance() const { return covariance_; }

    const FittedModel& get(int n, double w, const FitStrategy& s) {
        const std::string name = "fit_N" + std::to_string(n) + "_W" + short_real(w) + "_" + strategy_key(s) +
                                 "_" + block_rule_key(config_) + ".fit";
        const auto it = fits_.find(name);
        if (it != fits_.end()) return it->second;
        const fs::path path = fs::path(config_.output_dir) / "fits" / name;
        if (use_disk_ && fs::exists(path)) {
            try {
                auto cached = parse_fit_document(read_file(path));
                if (cached.geometry.num_ports == n && cached.geometry.aperture == w &&
                    cached.geometry.mean_gain == config_.mean_gain && cached.strategy.label() == s.label())
                    return fits_.emplace(name, std::move(cached)).first->second;
            } catch (const std::exception&) {
                // Unreadable cache entries are refitted and overwritten.
            }
        }
        auto fit = fresh_fit(config_, n, w, s, covariance_);
        pending_.push_back(name);
        return fits_.emplace(name, std::move(fit)).first->second;
    }

    void flush() {
        if (!use_disk_ || pending_.empty()) return;
        const fs::path dir = fs::path(config_.output_dir) / "fits";
        fs::create_directories(dir);
        for (const auto& name : pending_) write_file(dir / name, format_fit_document(fits_.at(name)));
        pending_.clear();
    }

private:
    const ExperimentConfig& config_;
    std::optional<CovarianceMatrix> covariance_;
    bool use_disk_;
    std::map<std::string, FittedModel> fits_;
    std::vector<std::string> pending_;
};

std::vector<Scheme> row_schemes(const ExperimentConfig& c) {
    std::vector<Scheme> out = c.schemes;
    if (c.tas_strategy && std::find(out.begin(), out.end(), Scheme::TasRsma) == out.end())
        out.push_back(Scheme::TasRsma);
    return out;
}

struct PanelSpec {
    int ports;
    double aperture;
    double common_db;
    double private_db;
    std::string file;
};

std::vector<PanelSpec> panel_specs(const ExperimentConfig& c) {
    std::vector<PanelSpec> out;
    for (int n : c.ports)
        for (double w : c.apertures)
            for (double cth : c.common_threshold_db)
                for (double pth : c.private_threshold_db) {
                    std::string file = "panel_N" + std::to_string(n) + "_W" + short_real(w);
                    if (c.common_threshold_db.size() > 1) file += "_c" + short_real(cth);
                    if (c.private_threshold_db.size() > 1) file += "_p" + short_real(pth);
                    out.push_back({n, w, cth, pth, file + ".csv"});
                }
    return out;
}

RsmaConfig point_config(const ExperimentConfig& c, const PanelSpec& p, double v) {
    const double snr = c.axis == Axis::SnrDb ? v : c.snr_db;
    const double tc = c.axis == Axis::CommonFraction ? v : c.t_common;
    std::vector<double> split = c.private_split;
    if (c.axis == Axis::PrivateShare) split = {v, 1.0 - v};
    const std::vector<double> cth{p.common_db}, pth{p.private_db};
    try {
        return RsmaConfig::from_db(snr, tc, split, cth, pth);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep", std::string("invalid operating point: ") + e.what());
    }
}

NomaConfig point_noma(const ExperimentConfig& c, double v) {
    NomaConfig n;
    n.snr = db_to_linear(c.axis == Axis::SnrDb ? v : c.snr_db);
    n.split = c.noma_split;
    n.threshold = {db_to_linear(c.noma_threshold_db), db_to_linear(c.noma_threshold_db)};
    return n;
}

Panel run_panel(const ExperimentConfig& c, const PanelSpec& spec, RunMode mode, FitCache& fits) {
    const auto grid = c.grid();
    const auto schemes = row_schemes(c);
    const bool analytic = mode != RunMode::MonteCarlo;
    const bool mc = mode != RunMode::Analytic;
    const auto quad = c.quadrature();
    const ChannelGeometry geometry{spec.ports, spec.aperture, c.mean_gain};

    std::vector<RsmaConfig> configs;
    std::vector<NomaConfig> noma;
    for (double v : grid) {
        configs.push_back(point_config(c, spec, v));
        noma.push_back(point_noma(c, v));
    }

    const bool has_fas = std::find(schemes.begin(), schemes.end(), Scheme::FasRsma) != schemes.end();
    const bool has_tas = std::find(schemes.begin(), schemes.end(), Scheme::TasRsma) != schemes.end();
    std::vector<const FittedModel*> models;
    if (has_fas)
        for (const auto& s : c.strategies) models.push_back(&fits.get(spec.ports, spec.aperture, s));

    // analytic[point][model], with the single-antenna forms in the last slot.
    const std::size_t slots = models.size() + 1;
    std::vector<std::vector<std::optional<AnalyticResult>>> results(grid.size(),
                                                                    std::vector<std::optional<AnalyticResult>>(slots));
    if (analytic) {
        detail::parallel_for(grid.size() * slots, c.workers, [&](std::size_t task, unsigned) {
            const std::size_t p = task / slots, m = task % slots;
            if (m < models.size()) results[p][m] = evaluate_fas(models[m]->model, configs[p], quad);
            else if (has_tas) results[p][m] = evaluate_tas(configs[p], c.mean_gain, quad);
        });
    }

    std::map<Scheme, std::vector<SimEstimate>> sims;
    if (mc) {
        SimulationPlan plan;
        plan.geometry = geometry;
        plan.trials = c.trials;
        plan.seed = c.seed;
        plan.workers = c.workers;
        plan.covariance = fits.covariance();
        for (auto s : schemes) {
            plan.scheme = s;
            sims[s] = is_noma(s) ? simulate_noma_points(plan, noma) : simulate_points(plan, configs);
        }
    }

    Panel panel;
    panel.ports = spec.ports;
    panel.aperture = spec.aperture;
    panel.mean_gain = c.mean_gain;
    panel.common_threshold_db = spec.common_db;
    panel.private_threshold_db = spec.private_db;
    panel.axis = c.axis;
    panel.mode = mode;
    panel.trials = mc ? c.trials : 0;
    panel.seed = c.seed;
    panel.file = spec.file;

    for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto thresholds = effective_thresholds(configs[p]);
        const auto noma_th = noma_gain_thresholds(noma[p]);
        for (auto scheme : schemes) {
            const SimEstimate* est = mc ? &sims[scheme][p] : nullptr;
            struct Variant {
                std::string label;
                const AnalyticResult* result;
                std::optional<double> distance;
            };
            std::vector<Variant> variants;
            if (scheme == Scheme::FasRsma) {
                for (std::size_t m = 0; m < models.size(); ++m)
                    variants.push_back({models[m]->strategy.label(), analytic ? &*results[p][m] : nullptr,
                                        q(models[m]->distance)});
            } else if (scheme == Scheme::TasRsma) {
                variants.push_back({"tas", analytic ? &*results[p][slots - 1] : nullptr, std::nullopt});
            } else {
                variants.push_back({"none", nullptr, std::nullopt});
            }
            for (const auto& var : variants) {
                for (int u = 0; u < c.users; ++u) {
                    const auto k = static_cast<std::size_t>(u);
                    SweepRow row;
                    row.axis_value = quantize(grid[p]);
                    row.scheme = scheme;
                    row.strategy = var.label;
                    row.user = u + 1;
                    row.fit_distance = var.distance;
                    if (is_noma(scheme)) {
                        row.feasible = std::isfinite(noma_th[k]);
                    } else {
                        row.feasible = thresholds[k].feasible();
                    }
                    if (var.result) {
                        row.op_analytic = q(var.result->outage[k]);
                        row.c_common = q(var.result->capacity.common);
                        row.c_private = q(var.result->capacity.private_stream[k]);
                        row.c_sum = q(var.result->capacity.sum);
                    }
                    if (est) {
                        row.op_mc = q(est->outage[k]);
                        row.op_mc_stderr = q(est->outage_stderr[k]);
                        if (!var.result) {
                            row.c_common = q(est->common_capacity);
                            row.c_private = q(est->private_capacity[k]);
                            row.c_sum = q(est->sum_capacity);
                        }
                    }
                    panel.rows.push_back(std::move(row));
                }
            }
        }
    }
    return panel;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

double quantize(double value) {
    if (!std::isfinite(value)) return value;
    return std::strtod(g12(value).c_str(), nullptr);
}

std::string format_panel_csv(const Panel& panel) {
    std::ostringstream os;
    os << "# schema=1\n";
    os << "# panel N=" << panel.ports << " W=" << g12(panel.aperture) << " eta0=" << g12(panel.mean_gain)
       << " common_threshold_db=" << g12(panel.common_threshold_db)
       << " private_threshold_db=" << g12(panel.private_threshold_db) << " axis=" << axis_name(panel.axis)
       << " mode=" << mode_name(panel.mode) << " trials=" << panel.trials << " seed=" << panel.seed << '\n';
    if (panel.trials > 0)
        os << "# op_mc below " << g12(10.0 / static_cast<double>(panel.trials))
           << " (10/trials) is statistically unresolved\n";
    os << kHeader << '\n';
    for (const auto& r : panel.rows) {
        os << g12(r.axis_value) << ',' << scheme_name(r.scheme) << ',' << r.strategy << ',' << r.user << ','
           << field(r.op_analytic) << ',' << field(r.op_mc) << ',' << field(r.op_mc_stderr) << ','
           << field(r.c_common) << ',' << field(r.c_private) << ',' << field(r.c_sum) << ','
           << (r.feasible ? "true" : "false") << ',' << field(r.fit_distance) << '\n';
    }
    return os.str();
}

Panel parse_panel_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto fail = [](const std::string& what) { throw ConfigError("csv", what); };
    if (!std::getline(is, line) || line != "# schema=1") fail("missing '# schema=1' line");
    Panel panel;
    bool have_panel = false, have_header = false;
    auto number = [&](const std::string& s) {
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (s.empty() || *end != '\0') fail("bad number '" + s + "'");
        return v;
    };
    auto optional = [&](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        return number(s);
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("# panel ", 0) == 0) {
            std::istringstream ps(line.substr(8));
            std::string tok;
            while (ps >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) fail("bad panel field '" + tok + "'");
                const std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
                if (k == "N") panel.ports = static_cast<int>(number(v));
                else if (k == "W") panel.aperture = number(v);
                else if (k == "eta0") panel.mean_gain = number(v);
                else if (k == "common_threshold_db") panel.common_threshold_db = number(v);
                else if (k == "private_threshold_db") panel.private_threshold_db = number(v);
                else if (k == "axis") {
                    if (v == "snr_db") panel.axis = Axis::SnrDb;
                    else if (v == "t_c") panel.axis = Axis::CommonFraction;
                    else if (v == "t_p1") panel.axis = Axis::PrivateShare;
                    else fail("bad axis '" + v + "'");
                } else if (k == "mode") {
                    if (v == "analytic") panel.mode = RunMode::Analytic;
                    else if (v == "mc") panel.mode = RunMode::MonteCarlo;
                    else if (v == "both") panel.mode = RunMode::Both;
                    else fail("bad mode '" + v + "'");
                } else if (k == "trials") panel.trials = std::stoull(v);
                else if (k == "seed") panel.seed = std::stoull(v);
                else fail("unknown panel field '" + k + "'");
            }
            have_panel = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (!have_header) {
            if (line != kHeader) fail("unexpected column header");
            have_header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 12) fail("expected 12 columns, got " + std::to_string(cells.size()));
        SweepRow r;
        r.axis_value = number(cells[0]);
        try {
            r.scheme = parse_scheme(cells[1]);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        r.strategy = cells[2];
        r.user = static_cast<int>(number(cells[3]));
        r.op_analytic = optional(cells[4]);
        r.op_mc = optional(cells[5]);
        r.op_mc_stderr = optional(cells[6]);
        r.c_common = optional(cells[7]);
        r.c_private = optional(cells[8]);
        r.c_sum = optional(cells[9]);
        if (cells[10] != "true" && cells[10] != "false") fail("bad feasible flag '" + cells[10] + "'");
        r.feasible = cells[10] == "true";
        r.fit_distance = optional(cells[11]);
        panel.rows.push_back(std::move(r));
    }
    if (!have_panel) fail("missing '# panel' line");
    if (!have_header) fail("missing column header");
    return panel;
}

std::vector<FittedModel> fit_models(const ExperimentConfig& config) {
    config.validate();
    const auto cov = load_covariance(config);
    std::vector<FittedModel> out;
    for (int n : config.ports)
        for (double w : config.apertures)
            for (const auto& s : config.strategies) out.push_back(fresh_fit(config, n, w, s, cov));
    return out;
}

SweepResult run_experiment(const ExperimentConfig& config, RunMode mode) {
    config.validate();
    const auto specs = panel_specs(config);
    // Reject bad operating points before touching the disk.
    for (const auto& spec : specs)
        for (double v : config.grid()) {
            point_config(config, spec, v);
            noma_gain_thresholds(point_noma(config, v));
        }

    FitCache fits(config, load_covariance(config));
    SweepResult result;
    for (const auto& spec : specs) result.panels.push_back(run_panel(config, spec, mode, fits));

    const fs::path dir(config.output_dir);
    fs::create_directories(dir);
    fits.flush();
    std::ostringstream manifest;
    manifest << "# fasrsma run manifest\n";
    manifest << "schema = 1\n";
    manifest << "mode = " << mode_name(mode) << '\n';
    manifest << "seed = " << config.seed << '\n';
    manifest << "config_hash = fnv1a64:" << hex64(config.hash()) << '\n';
    for (const auto& panel : result.panels) {
        write_file(dir / panel.file, format_panel_csv(panel));
        manifest << "file = " << panel.file << '\n';
    }
    manifest << "[config]\n" << config.canonical();
    write_file(dir / "manifest.txt", manifest.str());
    return result;
}

SweepResult load_result(const std::string& dir) {
    const fs::path root(dir);
    const fs::path manifest = root / "manifest.txt";
    if (!fs::exists(manifest)) throw IoError("no manifest.txt in '" + dir + "'; run a sweep first");
    std::istringstream is(read_file(manifest));
    SweepResult result;
    std::string line;
    while (std::getline(is, line)) {
        if (line == "[config]") break;
        if (line.rfind("file = ", 0) != 0) continue;
        const std::string file = line.substr(7);
        Panel panel = parse_panel_csv(read_file(root / file));
        panel.file = file;
        result.panels.push_back(std::move(panel));
    }
    return result;
}

namespace {

struct Deviation {
    double sigmas;
    double axis;
    int user;
};

// |analytic - simulated| in standard errors. Points where the simulation saw
// fewer than 10 events use the binomial error implied by the analytic value;
// points where both are below resolution are skipped.
std::optional<double> deviation(const SweepRow& r, std::size_t trials) {
    if (!r.op_analytic || !r.op_mc || !r.op_mc_stderr) return std::nullopt;
    const double n = static_cast<double>(trials);
    const double resolution = 10.0 / n;
    const double diff = std::abs(*r.op_analytic - *r.op_mc);
    double sigma = *r.op_mc_stderr;
    if (*r.op_mc < resolution) {
        if (*r.op_analytic < resolution) return std::nullopt;
        sigma = std::sqrt(*r.op_analytic * (1.0 - *r.op_analytic) / n);
    }
    if (diff == 0.0) return 0.0;
    if (!(sigma > 0.0)) return std::numeric_limits<double>::infinity();
    return diff / sigma;
}

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

std::string compare_report(const SweepResult& result) {
    std::ostringstream os;
    bool any = false;
    for (const auto& panel : result.panels) {
        std::map<std::string, std::vector<std::pair<const SweepRow*, std::optional<double>>>> groups;
        std::vector<std::string> order;
        for (const auto& r : panel.rows) {
            if (!r.op_analytic || !r.op_mc) continue;
            const std::string key = scheme_name(r.scheme) + "/" + r.strategy;
            if (!groups.count(key)) order.push_back(key);
            groups[key].push_back({&r, deviation(r, panel.trials)});
        }
        if (groups.empty()) continue;
        any = true;
        os << "panel N=" << panel.ports << " W=" << fmt(panel.aperture, "%g")
           << " common_threshold_db=" << fmt(panel.common_threshold_db, "%g")
           << " private_threshold_db=" << fmt(panel.private_threshold_db, "%g") << " trials=" << panel.trials;
        if (!panel.file.empty()) os << " (" << panel.file << ")";
        os << '\n';
        for (const auto& key : order) {
            double worst = 0.0;
            int compared = 0, skipped = 0;
            std::vector<Deviation> flagged;
            for (const auto& [row, dev] : groups[key]) {
                if (!dev) {
                    ++skipped;
                    continue;
                }
                ++compared;
                worst = std::max(worst, *dev);
                if (*dev > 3.0) flagged.push_back({*dev, row->axis_value, row->user});
            }
            os << "  " << key << ": max deviation " << fmt(worst) << " sigma over " << compared << " points, "
               << flagged.size() << " above 3 sigma";
            if (skipped) os << ", " << skipped << " below resolution";
            os << '\n';
            for (const auto& f : flagged)
                os << "    above 3 sigma: " << axis_name(panel.axis) << "=" << fmt(f.axis, "%g") << " user " << f.user
                   << " (" << fmt(f.sigmas) << " sigma)\n";
        }
        // Point-by-point comparison of the variable fit against each constant fit.
        for (const auto& vkey : order) {
            if (vkey.size() < 4 || vkey.substr(vkey.size() - 4) != "/vbc") continue;
            const std::string scheme = vkey.substr(0, vkey.size() - 4);
            for (const auto& ckey : order) {
                if (ckey.rfind(scheme + "/cbc", 0) != 0) continue;
                std::map<std::pair<double, int>, double> cbc;
                for (const auto& [row, dev] : groups[ckey])
                    if (row->op_analytic && row->op_mc)
                        cbc[{row->axis_value, row->user}] = std::abs(*row->op_analytic - *row->op_mc);
                int total = 0, wins = 0;
                for (const auto& [row, dev] : groups[vkey]) {
                    const auto it = cbc.find({row->axis_value, row->user});
                    if (it == cbc.end() || !dev) continue;
                    ++total;
                    if (std::abs(*row->op_analytic - *row->op_mc) < it->second) ++wins;
                }
                const double share = total ? 100.0 * wins / total : 0.0;
                os << "  vbc beats " << ckey.substr(scheme.size() + 1) << " at " << wins << "/" << total
                   << " points (" << fmt(share, "%.1f") << "%): " << (total && share >= 80.0 ? "yes" : "no")
                   << " (threshold 80%)\n";
            }
        }
    }
    if (!any)
        throw std::invalid_argument(
            "no strategy has both analytic and Monte Carlo outage columns; run a sweep that includes both");
    return os.str();
}

} // namespace fasrsma::experiments
