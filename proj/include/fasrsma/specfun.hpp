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

#include <vector>

// Special functions and quadrature used by the closed-form outage and
// capacity expressions. Everything here is a pure function.
namespace fasrsma::specfun {

// Zeroth-order Bessel function of the first kind.
// Throws std::domain_error for non-finite x.
double bessel_j0(double x);

// exp(-x) * I0(x) for x >= 0. Callers fold the exponent into their own
// exponential so nothing overflows for large arguments.
double bessel_i0_scaled(double x);

// First-order Marcum Q function Q1(a, b) = P(R > b) for a Rician envelope with
// noncentrality a and unit per-component variance. Result is in [0, 1].
double marcum_q1(double a, double b);

// Complement 1 - Q1(a, b), evaluated directly so that small CDF values keep
// full relative precision.
double marcum_p1(double a, double b);

// Marcum evaluation switches from the Bessel series to the windowed-density
// branch when a * b exceeds this value.
inline constexpr double kMarcumSeriesLimit = 30.0;

// Branch-forced variants, exposed so the two evaluation routes can be checked
// against each other at the switch point.
double marcum_q1_series(double a, double b);
double marcum_q1_large(double a, double b);

// Rician envelope density with line-of-sight amplitude mu and per-component
// variance sigma2, written as
//   x/sigma2 * exp(-(x-mu)^2/(2 sigma2)) * i0_scaled(mu x / sigma2)
// which stays finite where the textbook form would overflow.
double rician_pdf(double x, double mu, double sigma2);

struct QuadratureSpec {
    double cutoff = 8.0; // upper integration limit H
    int nodes = 30;      // node count M

    void validate() const;
};

struct QuadratureNode {
    double abscissa;
    double weight;
};

// Gauss-Chebyshev nodes mapped onto [0, cutoff]:
//   t_k = cos((2k-1) pi / 2M),  alpha_k = H/2 (t_k + 1),
//   w_k = H pi sqrt(1 - t_k^2) / 2M
// so that  int_0^H q(z) dz  ~=  sum_k w_k q(alpha_k).
std::vector<QuadratureNode> chebyshev_nodes(const QuadratureSpec& spec);

} // namespace fasrsma::specfun
