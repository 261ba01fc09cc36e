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

#include "qmbqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/QR>

#include "qmbqc/pauli.hpp"

namespace qmbqc {

namespace {

long long ipow(int d, int k) {
    long long r = 1;
    for (int i = 0; i < k; i++) r *= d;
    return r;
}

void check_sites(int n, const std::vector<int> &sites) {
    std::vector<int> s = sites;
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] < 0 || s[i] >= n) throw Error(ErrorCode::SiteOutOfRange, "site " + std::to_string(s[i]));
        if (i > 0 && s[i] == s[i - 1]) throw Error(ErrorCode::SiteOutOfRange, "repeated site");
    }
}

// Row/column position of every basis index for a given split.
void split_indices(int d, int n, const std::vector<int> &row_sites, std::vector<long long> &row_of,
                   std::vector<long long> &col_of) {
    long long total = ipow(d, n);
    std::vector<int> is_row(n, -1);
    for (size_t i = 0; i < row_sites.size(); i++) is_row[row_sites[i]] = (int)i;
    int k = (int)row_sites.size();
    row_of.resize(total);
    col_of.resize(total);
    std::vector<int> dig(n);
    for (long long idx = 0; idx < total; idx++) {
        long long r = idx;
        for (int s = n - 1; s >= 0; s--) {
            dig[s] = (int)(r % d);
            r /= d;
        }
        long long row = 0, col = 0;
        std::vector<int> rd(k);
        for (int s = 0; s < n; s++) {
            if (is_row[s] >= 0) {
                rd[is_row[s]] = dig[s];
            } else {
                col = col * d + dig[s];
            }
        }
        for (int i = 0; i < k; i++) row = row * d + rd[i];
        row_of[idx] = row;
        col_of[idx] = col;
    }
}

}  // namespace

Mat to_matrix(const StateVector &state, const std::vector<int> &row_sites) {
    int d = state.dim.d, n = state.n, k = (int)row_sites.size();
    std::vector<long long> row_of, col_of;
    split_indices(d, n, row_sites, row_of, col_of);
    Mat m(ipow(d, k), ipow(d, n - k));
    for (long long idx = 0; idx < (long long)row_of.size(); idx++) m(row_of[idx], col_of[idx]) = state.amps(idx);
    return m;
}

Vec from_matrix(const Mat &m, int d, int n, const std::vector<int> &row_sites) {
    std::vector<long long> row_of, col_of;
    split_indices(d, n, row_sites, row_of, col_of);
    Vec v(row_of.size());
    for (long long idx = 0; idx < (long long)row_of.size(); idx++) v(idx) = m(row_of[idx], col_of[idx]);
    return v;
}

StateVector make_state(const DimSpec &dim, const Vec &amps) {
    StateVector s;
    s.dim = dim;
    long long len = amps.size();
    int n = 0;
    long long acc = 1;
    while (acc < len) {
        acc *= dim.d;
        n++;
    }
    if (acc != len) throw Error(ErrorCode::DimensionMismatch, "amplitude count is not a power of d");
    s.n = n;
    s.amps = amps;
    return s;
}

StateVector product_state(const DimSpec &dim, const std::vector<Vec> &factors) {
    Mat acc = Mat::Identity(1, 1);
    for (const auto &f : factors) {
        if (f.size() != dim.d) throw Error(ErrorCode::DimensionMismatch, "factor has wrong dimension");
        acc = kron(acc, Mat(f));
    }
    StateVector s;
    s.dim = dim;
    s.n = (int)factors.size();
    s.amps = acc.col(0);
    return s;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    if (a.dim != b.dim) throw Error(ErrorCode::DimensionMismatch, "tensor of different dims");
    StateVector s = a;
    s.n = a.n + b.n;
    s.amps = kron(Mat(a.amps), Mat(b.amps)).col(0);
    return s;
}

StateVector apply(const StateVector &state, const Mat &op, const std::vector<int> &sites) {
    check_sites(state.n, sites);
    long long dim_k = ipow(state.dim.d, (int)sites.size());
    if (op.rows() != dim_k || op.cols() != dim_k) throw Error(ErrorCode::DimensionMismatch, "operator size");
    if (!is_unitary(op, state.tol)) throw Error(ErrorCode::NonUnitary, "operator is not unitary");
    Mat m = to_matrix(state, sites);
    StateVector out = state;
    out.amps = from_matrix(op * m, state.dim.d, state.n, sites);
    return out;
}

StateVector apply(const StateVector &state, const DenseOperator &op, const std::vector<int> &sites) {
    if (op.d != state.dim.d || op.sites != (int)sites.size()) throw Error(ErrorCode::DimensionMismatch, "operator shape");
    return apply(state, op.m, sites);
}

MeasurementBasis make_basis(int d, const Mat &vectors, const std::string &label, double tol) {
    MeasurementBasis b;
    b.d = d;
    b.vectors = vectors;
    b.label = label;
    int k = 0;
    long long acc = 1;
    while (acc < vectors.rows()) {
        acc *= d;
        k++;
    }
    if (acc != vectors.rows() || vectors.rows() != vectors.cols()) throw Error(ErrorCode::DimensionMismatch, "basis shape");
    b.sites = k;
    if (max_abs(vectors.adjoint() * vectors - Mat::Identity(vectors.cols(), vectors.cols())) > tol) {
        throw Error(ErrorCode::InvalidArgument, "basis vectors are not orthonormal");
    }
    return b;
}

bool transport_valid(const MeasurementBasis &basis, double tol) {
    double target = 1.0 / std::sqrt((double)basis.vectors.rows());
    return (basis.vectors.cwiseAbs().array() - target).abs().maxCoeff() < tol;
}

MeasurementBasis z_basis(const DimSpec &dim) {
    return make_basis(dim.d, identity(dim.d), "Z");
}

MeasurementBasis bell_basis(const DimSpec &dim) {
    int d = dim.d;
    Vec phi = Vec::Zero(d * d);
    for (int k = 0; k < d; k++) phi(k * d + k) = 1.0 / std::sqrt((double)d);
    Mat b(d * d, d * d);
    for (int s = 0; s < d; s++) {
        for (int t = 0; t < d; t++) {
            b.col(s * d + t) = kron(identity(d), pauli_X(dim, s) * pauli_Z(dim, t)) * phi;
        }
    }
    return make_basis(d, b, "Bell");
}

std::vector<double> outcome_probabilities(const StateVector &state, const MeasurementBasis &basis,
                                          const std::vector<int> &sites) {
    check_sites(state.n, sites);
    if (basis.d != state.dim.d || basis.sites != (int)sites.size()) throw Error(ErrorCode::DimensionMismatch, "basis shape");
    Mat m = to_matrix(state, sites);
    Mat proj = basis.vectors.adjoint() * m;
    std::vector<double> p(proj.rows());
    double total = 0;
    for (Eigen::Index b = 0; b < proj.rows(); b++) {
        p[b] = proj.row(b).squaredNorm();
        total += p[b];
    }
    for (auto &x : p) x /= total;
    return p;
}

MeasureResult measure(const StateVector &state, const MeasurementBasis &basis, const std::vector<int> &sites, Rng *rng,
                      std::optional<int> forced) {
    check_sites(state.n, sites);
    if (basis.d != state.dim.d || basis.sites != (int)sites.size()) throw Error(ErrorCode::DimensionMismatch, "basis shape");
    Mat m = to_matrix(state, sites);
    Mat proj = basis.vectors.adjoint() * m;
    double total = m.squaredNorm();
    std::vector<double> p(proj.rows());
    for (Eigen::Index b = 0; b < proj.rows(); b++) p[b] = proj.row(b).squaredNorm() / total;
    int outcome = 0;
    if (forced) {
        if (*forced < 0 || *forced >= (int)p.size()) throw Error(ErrorCode::InvalidArgument, "forced outcome out of range");
        outcome = *forced;
        if (p[outcome] < state.tol) throw Error(ErrorCode::ZeroProbabilityForced, "outcome " + std::to_string(outcome));
    } else {
        if (rng == nullptr) throw Error(ErrorCode::InvalidArgument, "measurement needs an rng or a forced outcome");
        double r = std::uniform_real_distribution<double>(0.0, 1.0)(*rng);
        double acc = 0;
        outcome = (int)p.size() - 1;
        for (size_t b = 0; b < p.size(); b++) {
            acc += p[b];
            if (r < acc) {
                outcome = (int)b;
                break;
            }
        }
        while (p[outcome] <= 0 && outcome > 0) outcome--;
    }
    MeasureResult res;
    res.outcome = outcome;
    res.probability = p[outcome];
    res.post.dim = state.dim;
    res.post.tol = state.tol;
    res.post.n = state.n - (int)sites.size();
    Vec v = proj.row(outcome).transpose();
    res.post.amps = v / v.norm();
    return res;
}

MeasureResult measure(const StateVector &state, const MeasurementBasis &basis, int site, Rng *rng,
                      std::optional<int> forced) {
    return measure(state, basis, std::vector<int>{site}, rng, forced);
}

DenseOperator reduced_density(const StateVector &state, const std::vector<int> &keep_sites) {
    check_sites(state.n, keep_sites);
    if (keep_sites.empty()) throw Error(ErrorCode::InvalidArgument, "keep at least one site");
    Mat m = to_matrix(state, keep_sites);
    Mat rho = m * m.adjoint();
    rho /= rho.trace().real();
    return DenseOperator{state.dim.d, (int)keep_sites.size(), rho};
}

SchmidtResult schmidt(const StateVector &state, const std::vector<int> &left_sites) {
    check_sites(state.n, left_sites);
    Mat m = to_matrix(state, left_sites);
    m /= m.norm();
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SchmidtResult r;
    r.coefficients = svd.singularValues();
    r.left = svd.matrixU();
    r.right = svd.matrixV().conjugate();
    return r;
}

bool is_max_entangled(const StateVector &state, const std::vector<int> &left_sites, double tol) {
    int k = (int)left_sites.size();
    int small = std::min(k, state.n - k);
    long long dim_small = ipow(state.dim.d, small);
    SchmidtResult s = schmidt(state, left_sites);
    double target = 1.0 / (double)dim_small;
    for (long long i = 0; i < dim_small; i++) {
        double c = i < s.coefficients.size() ? s.coefficients(i) : 0.0;
        if (std::abs(c * c - target) > tol) return false;
    }
    return true;
}

Mat haar_unitary(int d, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat z(d, d);
    for (int i = 0; i < d; i++)
        for (int j = 0; j < d; j++) z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; k++) q.col(k) *= r(k, k) / std::abs(r(k, k));
    return q;
}

}  // namespace qmbqc
