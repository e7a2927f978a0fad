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

#include "fasrsma/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fasrsma/errors.hpp"
#include "fasrsma/philox.hpp"
#include "fasrsma/specfun.hpp"

namespace fasrsma {

namespace {

constexpr double kClampTolerance = 1e-6;

// Targets assigned to one block during allocation: dominant first.
struct BlockTargets {
    std::vector<double> values;

    double rho(const FitStrategy& strategy) const {
        const auto size = values.size();
        if (strategy.kind == FitStrategy::Kind::Constant) return strategy.rho;
        if (size <= 1) return 0.0;
        const double m = static_cast<double>(size - 1);
        double subordinate = 0.0;
        for (std::size_t k = 1; k < size; ++k) subordinate += values[k];
        return std::clamp((m * values[0] - subordinate) / (2.0 * m), 0.0, 1.0);
    }

    double distance(const FitStrategy& strategy) const {
        const double r = rho(strategy);
        const double m = static_cast<double>(values.size() - 1);
        double d = values[0] - (1.0 + m * r);
        double acc = d * d;
        for (std::size_t k = 1; k < values.size(); ++k) {
            d = values[k] - (1.0 - r);
            acc += d * d;
        }
        return acc;
    }
};

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void ChannelGeometry::validate() const {
    if (num_ports < 1) throw std::invalid_argument("geometry: number of ports must be >= 1");
    if (!(aperture > 0.0) || !std::isfinite(aperture))
        throw std::invalid_argument("geometry: aperture must be positive");
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain))
        throw std::invalid_argument("geometry: mean gain must be positive");
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw std::invalid_argument("covariance matrix must be square");
}

CovarianceMatrix CovarianceMatrix::identity(int n) {
    return CovarianceMatrix(Eigen::MatrixXd::Identity(n, n));
}

bool CovarianceMatrix::is_symmetric(double tol) const {
    const auto n = entries_.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(entries_(i, j) - entries_(j, i)) > tol) return false;
    return true;
}

double EigenSpectrum::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

void CorrelationBlock::append_implied_eigenvalues(std::vector<double>& out) const {
    out.push_back(1.0 + (size - 1) * rho);
    out.insert(out.end(), static_cast<std::size_t>(size - 1), 1.0 - rho);
}

int BlockCorrelationModel::num_ports() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
}

std::vector<double> BlockCorrelationModel::implied_eigenvalues() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(num_ports()));
    for (const auto& b : blocks) b.append_implied_eigenvalues(out);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

void BlockCorrelationModel::validate() const {
    if (blocks.empty()) throw std::invalid_argument("block model has no blocks");
    for (const auto& b : blocks) {
        if (b.size < 1) throw std::invalid_argument("block size must be >= 1");
        if (!(b.rho >= 0.0 && b.rho <= 1.0))
            throw std::invalid_argument("block correlation must lie in [0, 1]");
    }
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain))
        throw std::invalid_argument("block model mean gain must be positive");
}

std::string FitStrategy::label() const {
    if (kind == Kind::Variable) return "vbc";
    char buf[32];
    std::snprintf(buf, sizeof buf, "cbc%g", rho);
    return buf;
}

FitStrategy FitStrategy::parse(const std::string& text) {
    if (text == "vbc") return variable();
    if (text == "cbc") return constant(0.97);
    if (text.rfind("cbc:", 0) == 0 || (text.rfind("cbc", 0) == 0 && text.size() > 3)) {
        const std::string num = text.substr(text[3] == ':' ? 4 : 3);
        std::size_t used = 0;
        double rho = 0.0;
        try {
            rho = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != num.size() || num.empty())
            throw std::invalid_argument("bad CBC correlation in strategy '" + text + "'");
        if (!(rho >= 0.0 && rho <= 1.0))
            throw std::invalid_argument("CBC correlation must lie in [0, 1]");
        return constant(rho);
    }
    throw std::invalid_argument("unknown fit strategy '" + text + "'");
}

CovarianceMatrix build_jakes_covariance(const ChannelGeometry& geometry) {
    geometry.validate();
    const int n = geometry.num_ports;
    if (n < 2) throw std::invalid_argument("Jakes covariance needs at least two ports");
    std::vector<double> lag(static_cast<std::size_t>(n));
    const double step = 2.0 * std::numbers::pi * geometry.aperture / (n - 1);
    for (int k = 0; k < n; ++k) lag[static_cast<std::size_t>(k)] = specfun::bessel_j0(step * k);
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) m(k, l) = lag[static_cast<std::size_t>(std::abs(k - l))];
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix block_covariance(const BlockCorrelationModel& model) {
    model.validate();
    const int n = model.num_ports();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    int offset = 0;
    for (const auto& b : model.blocks) {
        const double rho = b.size == 1 ? 0.0 : b.rho;
        for (int i = 0; i < b.size; ++i)
            for (int j = 0; j < b.size; ++j) m(offset + i, offset + j) = i == j ? 1.0 : rho;
        offset += b.size;
    }
    return CovarianceMatrix(std::move(m));
}

EigenSpectrum eigen_spectrum(const CovarianceMatrix& cov) {
    if (cov.size() == 0) throw std::invalid_argument("empty covariance matrix");
    if (!cov.is_symmetric(1e-12)) throw ContractViolation("covariance matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ContractViolation("eigensolver did not converge");
    EigenSpectrum spectrum;
    const auto& ev = solver.eigenvalues();
    spectrum.values.reserve(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
        double v = ev(i);
        if (v < -kClampTolerance)
            throw ContractViolation("covariance matrix has a negative eigenvalue");
        spectrum.values.push_back(std::max(v, 0.0));
    }
    return spectrum;
}

BlockCorrelationModel fit_block_model(const EigenSpectrum& spectrum, int num_blocks,
                                      const FitStrategy& strategy, double mean_gain,
                                      FitStats* stats) {
    const int n = static_cast<int>(spectrum.size());
    if (n == 0) throw std::invalid_argument("cannot fit an empty spectrum");
    if (num_blocks < 1 || num_blocks > n)
        throw std::invalid_argument("block count must lie in [1, N]");
    if (strategy.kind == FitStrategy::Kind::Constant && !(strategy.rho >= 0.0 && strategy.rho <= 1.0))
        throw std::invalid_argument("CBC correlation must lie in [0, 1]");

    std::vector<double> sorted = spectrum.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    std::vector<BlockTargets> blocks(static_cast<std::size_t>(num_blocks));
    for (int d = 0; d < num_blocks; ++d) blocks[static_cast<std::size_t>(d)].values.push_back(sorted[static_cast<std::size_t>(d)]);

    FitStats local;
    for (int i = num_blocks; i < n; ++i) {
        const double current = sorted[static_cast<std::size_t>(i)];
        std::size_t best = 0;
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < blocks.size(); ++d) {
            auto& b = blocks[d];
            b.values.push_back(current);
            const double dist = b.distance(strategy);
            b.values.pop_back();
            ++local.candidate_evaluations;
            if (dist < best_distance) {
                best_distance = dist;
                best = d;
            }
        }
        blocks[best].values.push_back(current);
        ++local.allocation_steps;
    }
    if (stats) *stats = local;

    BlockCorrelationModel model;
    model.mean_gain = mean_gain;
    model.blocks.reserve(blocks.size());
    for (const auto& b : blocks)
        model.blocks.push_back({static_cast<int>(b.values.size()), b.rho(strategy)});
    model.validate();
    return model;
}

double model_distance(const EigenSpectrum& spectrum, const BlockCorrelationModel& model) {
    const auto implied = model.implied_eigenvalues();
    if (implied.size() != spectrum.size())
        throw std::invalid_argument("model size does not match the spectrum");
    std::vector<double> sorted = spectrum.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double acc = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double d = sorted[i] - implied[i];
        acc += d * d;
    }
    return acc;
}

int dominant_block_count(const EigenSpectrum& spectrum) {
    int count = 0;
    for (double v : spectrum.values)
        if (v > 1.0) ++count;
    return std::max(count, 1);
}

FittedModel fit_geometry(const ChannelGeometry& geometry, const FitStrategy& strategy,
                         std::optional<int> num_blocks, BlockCountRule rule) {
    return fit_covariance(build_jakes_covariance(geometry), geometry, strategy, num_blocks, rule);
}

FittedModel fit_covariance(const CovarianceMatrix& cov, const ChannelGeometry& geometry,
                           const FitStrategy& strategy, std::optional<int> num_blocks, BlockCountRule rule) {
    if (cov.size() != geometry.num_ports)
        throw std::invalid_argument("covariance size does not match the number of ports");
    const auto spectrum = eigen_spectrum(cov);
    FittedModel fit{geometry, strategy, {}, 0.0};
    if (num_blocks || rule == BlockCountRule::DominantEigenvalues) {
        const int d = num_blocks ? *num_blocks : dominant_block_count(spectrum);
        fit.model = fit_block_model(spectrum, d, strategy, geometry.mean_gain);
        fit.distance = model_distance(spectrum, fit.model);
        return fit;
    }
    fit.distance = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= geometry.num_ports; ++d) {
        auto candidate = fit_block_model(spectrum, d, strategy, geometry.mean_gain);
        const double dist = model_distance(spectrum, candidate);
        if (dist < fit.distance) {
            fit.distance = dist;
            fit.model = std::move(candidate);
        }
    }
    return fit;
}

std::string format_fit_document(const FittedModel& fit) {
    std::ostringstream os;
    os << "N = " << fit.geometry.num_ports << '\n';
    os << "W = " << format_real(fit.geometry.aperture) << '\n';
    os << "eta0 = " << format_real(fit.geometry.mean_gain) << '\n';
    os << "strategy = " << fit.strategy.label() << '\n';
    os << "D = " << fit.model.blocks.size() << '\n';
    for (std::size_t d = 0; d < fit.model.blocks.size(); ++d) {
        const auto& b = fit.model.blocks[d];
        os << "block." << d + 1 << " = " << b.size << ' ' << format_real(b.rho) << '\n';
    }
    os << "distance = " << format_real(fit.distance) << '\n';
    return os.str();
}

FittedModel parse_fit_document(const std::string& text) {
    std::map<std::string, std::string> fields;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        if (!fields.emplace(key, trim(line.substr(eq + 1))).second)
            throw ConfigError(key, "duplicate key");
    }
    auto take = [&](const std::string& key) {
        const auto it = fields.find(key);
        if (it == fields.end()) throw ConfigError(key, "missing from fit document");
        std::string v = it->second;
        fields.erase(it);
        return v;
    };
    auto to_int = [](const std::string& key, const std::string& v) {
        std::size_t used = 0;
        int out = 0;
        try {
            out = std::stoi(v, &used);
        } catch (const std::exception&) {
            throw ConfigError(key, "expected an integer");
        }
        if (used != v.size()) throw ConfigError(key, "expected an integer");
        return out;
    };
    auto to_real = [](const std::string& key, const std::string& v) {
        std::size_t used = 0;
        double out = 0.0;
        try {
            out = std::stod(v, &used);
        } catch (const std::exception&) {
            throw ConfigError(key, "expected a number");
        }
        if (used != v.size()) throw ConfigError(key, "expected a number");
        return out;
    };

    FittedModel fit;
    fit.geometry.num_ports = to_int("N", take("N"));
    fit.geometry.aperture = to_real("W", take("W"));
    fit.geometry.mean_gain = to_real("eta0", take("eta0"));
    try {
        fit.strategy = FitStrategy::parse(take("strategy"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("strategy", e.what());
    }
    const int d = to_int("D", take("D"));
    if (d < 1) throw ConfigError("D", "must be >= 1");
    fit.model.mean_gain = fit.geometry.mean_gain;
    for (int k = 1; k <= d; ++k) {
        const std::string key = "block." + std::to_string(k);
        std::istringstream bs(take(key));
        std::string size_text, rho_text, extra;
        if (!(bs >> size_text >> rho_text) || (bs >> extra))
            throw ConfigError(key, "expected '<size> <rho>'");
        fit.model.blocks.push_back({to_int(key, size_text), to_real(key, rho_text)});
    }
    fit.distance = to_real("distance", take("distance"));
    if (!fields.empty()) throw ConfigError(fields.begin()->first, "unknown key in fit document");
    try {
        fit.geometry.validate();
        fit.model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("fit", e.what());
    }
    if (fit.model.num_ports() != fit.geometry.num_ports)
        throw ConfigError("D", "block sizes do not add up to N");
    return fit;
}

CorrelatedChannelSampler::CorrelatedChannelSampler(const CovarianceMatrix& cov, double mean_gain,
                                                   SquareRootMethod method)
    : mean_gain_(mean_gain) {
    if (!(mean_gain > 0.0)) throw std::invalid_argument("mean gain must be positive");
    const int n = cov.size();
    if (n == 0) throw std::invalid_argument("empty covariance matrix");
    if (!cov.is_symmetric(1e-12)) throw ContractViolation("covariance matrix is not symmetric");
    if (method == SquareRootMethod::Eigen) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov.matrix());
        if (solver.info() != Eigen::Success) throw ContractViolation("eigensolver did not converge");
        Eigen::VectorXd root = solver.eigenvalues();
        // Eigenvalues at rounding level are treated as exact zeros so that a
        // rank-deficient matrix yields exactly repeated ports.
        const double noise = 64.0 * n * std::numeric_limits<double>::epsilon() *
                             std::max(root.cwiseAbs().maxCoeff(), 1.0);
        for (Eigen::Index i = 0; i < root.size(); ++i) {
            if (root(i) < -kClampTolerance)
                throw ContractViolation("covariance matrix has a negative eigenvalue");
            root(i) = root(i) <= noise ? 0.0 : std::sqrt(root(i));
        }
        const auto& v = solver.eigenvectors();
        factor_ = v * root.asDiagonal() * v.transpose();
    } else {
        Eigen::MatrixXd jittered = cov.matrix();
        Eigen::LLT<Eigen::MatrixXd> llt(jittered);
        if (llt.info() != Eigen::Success) {
            jittered.diagonal().array() += 1e-10;
            llt.compute(jittered);
            if (llt.info() != Eigen::Success)
                throw ContractViolation("covariance matrix is not positive definite");
        }
        factor_ = llt.matrixL();
    }
}

void CorrelatedChannelSampler::correlate(std::span<const std::complex<double>> white,
                                         std::span<std::complex<double>> out) const {
    const auto n = static_cast<std::size_t>(factor_.rows());
    if (white.size() != n || out.size() != n)
        throw std::invalid_argument("channel vector length does not match the covariance");
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            acc += factor_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * white[j];
        out[i] = acc;
    }
}

std::vector<std::vector<std::vector<std::complex<double>>>>
sample_correlated_channels(const CovarianceMatrix& cov, double mean_gain, std::uint64_t seed,
                           int num_users, std::size_t num_trials) {
    if (num_users < 1) throw std::invalid_argument("need at least one user");
    const CorrelatedChannelSampler sampler(cov, mean_gain);
    const Philox4x32 rng(seed);
    const auto n = static_cast<std::size_t>(sampler.num_ports());
    std::vector<std::complex<double>> white(n);
    std::vector<std::vector<std::vector<std::complex<double>>>> out(num_trials);
    for (std::size_t t = 0; t < num_trials; ++t) {
        out[t].resize(static_cast<std::size_t>(num_users));
        for (int u = 0; u < num_users; ++u) {
            for (std::size_t k = 0; k < n; ++k)
                white[k] = rng.complex_normal(t, static_cast<std::uint32_t>(u * n + k), mean_gain);
            auto& h = out[t][static_cast<std::size_t>(u)];
            h.resize(n);
            sampler.correlate(white, h);
        }
    }
    return out;
}

} // namespace fasrsma
