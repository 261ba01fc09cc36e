// Copyright 2026 The qmbqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMBQC_LINALG_HPP
#define QMBQC_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qmbqc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kTol = 1e-9;
constexpr double kPauliTol = 1e-8;

/// Square operator on `sites` sites of local dimension d.
struct DenseOperator {
    int d = 0;
    int sites = 0;
    Mat m;
};

Mat kron(const Mat &a, const Mat &b);
Mat kron_all(const std::vector<Mat> &ops);
Mat identity(int n);
Mat diag_phases(const std::vector<double> &phases);
std::vector<double> phases_of_diag(const Mat &diagonal);
double max_abs(const Mat &a);
bool is_unitary(const Mat &u, double tol = kTol);
bool is_hermitian(const Mat &h, double tol = kTol);
/// Scales so that the first entry with modulus above tol is positive real.
Mat phase_normalized(const Mat &a, double tol = 1e-12);
/// max |a - e^{i t} b| minimized over the global phase t.
double dist_up_to_phase(const Mat &a, const Mat &b);
bool equal_up_to_phase(const Mat &a, const Mat &b, double tol = kTol);
Mat mat_pow(const Mat &a, int k);
/// Principal logarithm of a unitary: returns Hermitian H with U = exp(iH), eigenphases in (-pi, pi].
Mat unitary_log(const Mat &u);
Mat expi_hermitian(const Mat &h);
/// 1 - |tr(V^dag U)| / n.
double trace_residual(const Mat &v, const Mat &u);
double state_fidelity(const Vec &a, const Vec &b);

}  // namespace qmbqc

#endif
