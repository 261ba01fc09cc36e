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

#include "qmbqc/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qmbqc {

Mat kron(const Mat &a, const Mat &b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return r;
}

Mat kron_all(const std::vector<Mat> &ops) {
    Mat r = Mat::Identity(1, 1);
    for (const auto &o : ops) r = kron(r, o);
    return r;
}

Mat identity(int n) {
    return Mat::Identity(n, n);
}

Mat diag_phases(const std::vector<double> &phases) {
    Mat r = Mat::Zero(phases.size(), phases.size());
    for (size_t k = 0; k < phases.size(); k++) r(k, k) = std::polar(1.0, phases[k]);
    return r;
}

std::vector<double> phases_of_diag(const Mat &diagonal) {
    std::vector<double> r(diagonal.rows());
    for (Eigen::Index k = 0; k < diagonal.rows(); k++) r[k] = std::arg(diagonal(k, k));
    return r;
}

double max_abs(const Mat &a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_unitary(const Mat &u, double tol) {
    if (u.rows() != u.cols()) return false;
    return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols())) < tol;
}

bool is_hermitian(const Mat &h, double tol) {
    if (h.rows() != h.cols()) return false;
    return max_abs(h - h.adjoint()) < tol;
}

Mat phase_normalized(const Mat &a, double tol) {
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            double r = std::abs(a(i, j));
            if (r > tol) return a * (std::conj(a(i, j)) / r);
        }
    }
    return a;
}

double dist_up_to_phase(const Mat &a, const Mat &b) {
    cplx ov = (b.adjoint() * a).trace();
    cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1, 0);
    return max_abs(a - ph * b);
}

bool equal_up_to_phase(const Mat &a, const Mat &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return dist_up_to_phase(a, b) < tol;
}

Mat mat_pow(const Mat &a, int k) {
    Mat r = Mat::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; i++) r = a * r;
    return r;
}

Mat unitary_log(const Mat &u) {
    // The Schur form of a normal matrix is diagonal, so degenerate clusters keep an orthonormal basis.
    Eigen::ComplexSchur<Mat> schur(u);
    Mat q = schur.matrixU();
    Mat t = schur.matrixT();
    Mat ph = Mat::Zero(u.rows(), u.cols());
    for (Eigen::Index k = 0; k < u.rows(); k++) {
        double a = std::arg(t(k, k));
        if (a <= -M_PI) a += 2 * M_PI;
        ph(k, k) = a;
    }
    Mat h = q * ph * q.adjoint();
    return 0.5 * (h + h.adjoint());
}

Mat expi_hermitian(const Mat &h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
    Vec ph(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); k++) ph(k) = std::polar(1.0, es.eigenvalues()(k));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_residual(const Mat &v, const Mat &u) {
    return std::max(0.0, 1.0 - std::abs((v.adjoint() * u).trace()) / (double)u.rows());
}

double state_fidelity(const Vec &a, const Vec &b) {
    double na = a.squaredNorm(), nb = b.squaredNorm();
    if (na == 0 || nb == 0) return 0;
    return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace qmbqc
