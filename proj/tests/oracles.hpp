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

#include <functional>
#include <vector>

// Independent reference evaluations used only by the tests. They trade speed
// for transparency: plain power series in extended precision and adaptive
// Simpson integration of densities.
namespace oracle {

// J0 by its power series in binary128 (libquadmath j0q for large |x|).
double bessel_j0(double x);

// exp(-x) I0(x) by its power series in long double.
double bessel_i0_scaled(double x);

// Adaptive Simpson on [lo, hi] in long double; tol is relative.
long double simpson(const std::function<long double(long double)>& f, long double lo,
                    long double hi, long double tol);

// Q1(a, b) and 1 - Q1(a, b) by integrating the Rician density.
double marcum_q1(double a, double b);
double marcum_p1(double a, double b);

// Gauss-Chebyshev rule built straight from its definition.
double chebyshev_integral(const std::function<double(double)>& f, double cutoff, int nodes);

// Sorted eigenvalues of a small symmetric matrix via cyclic Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a);

} // namespace oracle
