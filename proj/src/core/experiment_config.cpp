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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fasrsma/errors.hpp"
#include "fasrsma/experiments.hpp"

namespace fasrsma::experiments {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream is(value);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(key, "empty list entry");
        items.push_back(item);
    }
    if (items.empty()) throw ConfigError(key, "expected at least one value");
    return items;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw ConfigError(key, "expected a number, got '" + text + "'");
    return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected an integer, got '" + text + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    return v;
}

std::vector<double> parse_reals(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(key, value)) out.push_back(parse_real(key, item));
    return out;
}

// Shortest text that reads back to the same double.
std::string real(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + real(values[i]);
    return out;
}

bool parse_switch(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw ConfigError(key, "expected on or off");
}

// Round to 12 significant digits so 0.5 + 10 * 0.02 prints as 0.7.
double tidy(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

} // namespace

std::string axis_name(Axis axis) {
    switch (axis) {
    case Axis::SnrDb: return "snr_db";
    case Axis::CommonFraction: return "t_c";
    case Axis::PrivateShare: return "t_p1";
    }
    return "unknown";
}

std::string mode_name(RunMode mode) {
    switch (mode) {
    case RunMode::Analytic: return "analytic";
    case RunMode::MonteCarlo: return "mc";
    case RunMode::Both: return "both";
    }
    return "unknown";
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (value.empty()) throw ConfigError(key, "missing value");
    if (key == "geometry.N") {
        ports.clear();
        for (const auto& item : split_list(key, value)) {
            const auto n = parse_integer(key, item);
            if (n < 2 || n > 4096) throw ConfigError(key, "port count must lie in [2, 4096]");
            ports.push_back(static_cast<int>(n));
        }
    } else if (key == "geometry.W") {
        apertures = parse_reals(key, value);
    } else if (key == "geometry.covariance") {
        covariance_file = value;
    } else if (key == "geometry.eta0") {
        mean_gain = parse_real(key, value);
    } else if (key == "rsma.U") {
        const auto u = parse_integer(key, value);
        if (u < 1 || u > 64) throw ConfigError(key, "user count must lie in [1, 64]");
        users = static_cast<int>(u);
    } else if (key == "rsma.t_c") {
        t_common = parse_real(key, value);
    } else if (key == "rsma.private_split") {
        private_split = parse_reals(key, value);
    } else if (key == "rsma.common_threshold_db") {
        common_threshold_db = parse_reals(key, value);
    } else if (key == "rsma.private_threshold_db") {
        private_threshold_db = parse_reals(key, value);
    } else if (key == "sweep.axis") {
        if (value == "snr_db") axis = Axis::SnrDb;
        else if (value == "t_c") axis = Axis::CommonFraction;
        else if (value == "t_p1") axis = Axis::PrivateShare;
        else throw ConfigError(key, "expected snr_db, t_c or t_p1");
    } else if (key == "sweep.start") {
        sweep_start = parse_real(key, value);
    } else if (key == "sweep.stop") {
        sweep_stop = parse_real(key, value);
    } else if (key == "sweep.step") {
        sweep_step = parse_real(key, value);
    } else if (key == "sweep.values") {
        sweep_values = parse_reals(key, value);
    } else if (key == "sweep.snr_db") {
        snr_db = parse_real(key, value);
    } else if (key == "schemes") {
        schemes.clear();
        for (const auto& item : split_list(key, value)) {
            try {
                schemes.push_back(parse_scheme(item));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        }
    } else if (key == "strategies") {
        strategies.clear();
        tas_strategy = false;
        for (const auto& item : split_list(key, value)) {
            if (item == "tas") {
                tas_strategy = true;
                continue;
            }
            try {
                strategies.push_back(FitStrategy::parse(item));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        }
    } else if (key == "quad.H") {
        quad_cutoff_factor = parse_real(key, value);
    } else if (key == "quad.M") {
        quad_nodes = static_cast<int>(parse_integer(key, value));
    } else if (key == "quad.M_l") {
        quad_outer_nodes = static_cast<int>(parse_integer(key, value));
    } else if (key == "quad.M_s") {
        quad_inner_nodes = static_cast<int>(parse_integer(key, value));
    } else if (key == "mc.trials") {
        trials = parse_unsigned(key, value);
    } else if (key == "mc.seed") {
        seed = parse_unsigned(key, value);
    } else if (key == "mc.workers") {
        workers = static_cast<unsigned>(parse_unsigned(key, value));
    } else if (key == "output.dir") {
        output_dir = value;
    } else if (key == "fit.D") {
        if (value == "auto") {
            block_count = BlockCountMode::MinDistance;
        } else if (value == "eigen") {
            block_count = BlockCountMode::Dominant;
        } else {
            const auto d = parse_integer(key, value);
            if (d < 1) throw ConfigError(key, "block count must be >= 1");
            block_count = BlockCountMode::Fixed;
            fixed_blocks = static_cast<int>(d);
        }
    } else if (key == "fit.cache") {
        fit_cache = parse_switch(key, value);
    } else if (key == "noma.split") {
        const auto v = parse_reals(key, value);
        if (v.size() != 2) throw ConfigError(key, "expected two values");
        noma_split = {v[0], v[1]};
    } else if (key == "noma.threshold_db") {
        noma_threshold_db = parse_real(key, value);
    } else {
        throw ConfigError(key, "unknown key");
    }
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "missing key");
        if (!seen.insert(key).second) throw ConfigError(key, "given more than once");
        cfg.set(key, line.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::vector<double> ExperimentConfig::grid() const {
    if (sweep_values) return *sweep_values;
    if (!sweep_start && !sweep_stop && !sweep_step) {
        if (axis != Axis::SnrDb) return {};
        std::vector<double> out;
        for (int i = 0; i <= 16; ++i) out.push_back(2.5 * i);
        return out;
    }
    if (!sweep_start || !sweep_stop || !sweep_step) return {};
    const double start = *sweep_start, stop = *sweep_stop, step = *sweep_step;
    if (!(step > 0.0) || stop < start) return {};
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw ConfigError("sweep.step", "grid has too many points");
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(tidy(start + static_cast<double>(i) * step));
    return out;
}

void ExperimentConfig::validate() const {
    if (ports.empty()) throw ConfigError("geometry.N", "expected at least one port count");
    for (double w : apertures)
        if (!(w > 0.0)) throw ConfigError("geometry.W", "aperture must be positive");
    if (!(mean_gain > 0.0)) throw ConfigError("geometry.eta0", "mean gain must be positive");
    if (!covariance_file.empty() && (ports.size() != 1 || apertures.size() != 1))
        throw ConfigError("geometry.covariance", "a covariance file needs a single geometry.N and geometry.W");
    if (static_cast<int>(private_split.size()) != users)
        throw ConfigError("rsma.private_split", "need one share per user (rsma.U = " + std::to_string(users) + ")");
    double share = 0.0;
    for (double s : private_split) {
        if (!(s > 0.0)) throw ConfigError("rsma.private_split", "shares must be positive");
        share += s;
    }
    if (std::abs(share - 1.0) > 1e-9) throw ConfigError("rsma.private_split", "shares must add up to one");
    if (!(t_common > 0.0 && t_common < 1.0)) throw ConfigError("rsma.t_c", "must lie in (0, 1)");
    if (sweep_step && !(*sweep_step > 0.0)) throw ConfigError("sweep.step", "must be positive");
    const auto g = grid();
    if (g.empty()) throw ConfigError("sweep", "the sweep grid is empty");
    for (double v : g) {
        if (axis == Axis::CommonFraction && !(v > 0.0 && v < 1.0))
            throw ConfigError("sweep.values", "t_c values must lie in (0, 1)");
        if (axis == Axis::PrivateShare && !(v > 0.0 && v < 1.0))
            throw ConfigError("sweep.values", "t_p1 shares must lie in (0, 1)");
    }
    if (axis == Axis::PrivateShare && users != 2)
        throw ConfigError("sweep.axis", "the t_p1 axis needs exactly two users");
    if (schemes.empty() && !tas_strategy) throw ConfigError("schemes", "nothing to run");
    for (auto s : schemes)
        if (is_noma(s) && users != 2) throw ConfigError("schemes", "NOMA baselines support exactly two users");
    if (strategies.empty())
        for (auto s : schemes)
            if (s == Scheme::FasRsma) throw ConfigError("strategies", "fas-rsma needs a cbc or vbc strategy");
    if (!(quad_cutoff_factor > 0.0)) throw ConfigError("quad.H", "must be positive");
    if (quad_nodes < 1) throw ConfigError("quad.M", "must be >= 1");
    if (quad_outer_nodes < 1) throw ConfigError("quad.M_l", "must be >= 1");
    if (quad_inner_nodes < 1) throw ConfigError("quad.M_s", "must be >= 1");
    if (trials < 1) throw ConfigError("mc.trials", "must be >= 1");
    if (output_dir.empty()) throw ConfigError("output.dir", "must not be empty");
    if (block_count == BlockCountMode::Fixed)
        for (int n : ports)
            if (fixed_blocks > n) throw ConfigError("fit.D", "block count exceeds the port count");
    if (!(noma_split[0] >= 0.0 && noma_split[1] >= 0.0) || std::abs(noma_split[0] + noma_split[1] - 1.0) > 1e-12)
        throw ConfigError("noma.split", "shares must be non-negative and add up to one");
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << "geometry.N = ";
    for (std::size_t i = 0; i < ports.size(); ++i) os << (i ? ", " : "") << ports[i];
    os << "\ngeometry.W = " << join_reals(apertures);
    if (!covariance_file.empty()) os << "\ngeometry.covariance = " << covariance_file;
    os << "\ngeometry.eta0 = " << real(mean_gain);
    os << "\nrsma.U = " << users;
    os << "\nrsma.t_c = " << real(t_common);
    os << "\nrsma.private_split = " << join_reals(private_split);
    os << "\nrsma.common_threshold_db = " << join_reals(common_threshold_db);
    os << "\nrsma.private_threshold_db = " << join_reals(private_threshold_db);
    os << "\nsweep.axis = " << axis_name(axis);
    os << "\nsweep.values = " << join_reals(grid());
    os << "\nsweep.snr_db = " << real(snr_db);
    os << "\nschemes = ";
    for (std::size_t i = 0; i < schemes.size(); ++i) os << (i ? ", " : "") << scheme_name(schemes[i]);
    os << "\nstrategies = ";
    std::string sep;
    for (const auto& s : strategies) {
        os << sep << (s.kind == FitStrategy::Kind::Variable ? std::string("vbc") : "cbc:" + real(s.rho));
        sep = ", ";
    }
    if (tas_strategy) os << sep << "tas";
    os << "\nquad.H = " << real(quad_cutoff_factor);
    os << "\nquad.M = " << quad_nodes;
    os << "\nquad.M_l = " << quad_outer_nodes;
    os << "\nquad.M_s = " << quad_inner_nodes;
    os << "\nmc.trials = " << trials;
    os << "\nmc.seed = " << seed;
    os << "\noutput.dir = " << output_dir;
    os << "\nfit.D = "
       << (block_count == BlockCountMode::MinDistance ? std::string("auto")
           : block_count == BlockCountMode::Dominant  ? std::string("eigen")
                                                      : std::to_string(fixed_blocks));
    os << "\nfit.cache = " << (fit_cache ? "on" : "off");
    os << "\nnoma.split = " << real(noma_split[0]) << ", " << real(noma_split[1]);
    os << "\nnoma.threshold_db = " << real(noma_threshold_db) << '\n';
    return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

QuadratureSettings ExperimentConfig::quadrature() const {
    const double cutoff = quad_cutoff_factor * std::sqrt(mean_gain);
    return {{cutoff, quad_nodes}, {cutoff, quad_outer_nodes}, {cutoff, quad_inner_nodes}};
}

bool ExperimentConfig::runs_tas_rsma() const {
    if (tas_strategy) return true;
    for (auto s : schemes)
        if (s == Scheme::TasRsma) return true;
    return false;
}

} // namespace fasrsma::experiments
