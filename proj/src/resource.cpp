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

#include "qmbqc/resource.hpp"

#include <cmath>

#include "qmbqc/gates.hpp"
#include "qmbqc/sim.hpp"

namespace qmbqc {

namespace {

void require_blocks(const DimSpec &dim, const std::vector<Mat> &blocks) {
    if ((int)blocks.size() != dim.d) throw Error(ErrorCode::DimensionMismatch, "need d blocks");
    for (const auto &b : blocks) {
        if (b.rows() != dim.d || b.cols() != dim.d) throw Error(ErrorCode::DimensionMismatch, "block shape");
        if (!is_unitary(b)) throw Error(ErrorCode::NonUnitary, "block is not unitary");
    }
}

int frob(const DimSpec &dim, int k, int r) {
    for (int i = 0; i < r; i++) {
        int acc = 1;
        for (int j = 0; j < dim.p; j++) acc = lab_mul(dim, acc, k);
        k = acc;
    }
    return k;
}

std::vector<double> phases_of(const Mat &diag_gate) {
    return phases_of_diag(diag_gate);
}

}  // namespace

EntanglingGateSpec diagonal_gate(const DimSpec &dim, const Eigen::MatrixXd &theta) {
    if (theta.rows() != dim.d || theta.cols() != dim.d) throw Error(ErrorCode::DimensionMismatch, "theta must be d x d");
    if (!theta.allFinite()) throw Error(ErrorCode::InvalidArgument, "theta entries must be finite reals");
    EntanglingGateSpec s;
    s.dim = dim;
    s.kind = GateKind::Diagonal;
    s.theta = theta;
    s.init_phases.assign(dim.d, 0.0);
    return s;
}

EntanglingGateSpec block_gate(const DimSpec &dim, const std::vector<Mat> &blocks, const std::vector<double> &init_phases) {
    require_blocks(dim, blocks);
    if ((int)init_phases.size() != dim.d) throw Error(ErrorCode::DimensionMismatch, "need d init phases");
    EntanglingGateSpec s;
    s.dim = dim;
    s.kind = GateKind::BlockDiagonal;
    s.blocks = blocks;
    s.init_phases = init_phases;
    return s;
}

EntanglingGateSpec named_cz(const DimSpec &dim) {
    Eigen::MatrixXd th(dim.d, dim.d);
    int den = dim.phase_den();
    for (int j = 0; j < dim.d; j++)
        for (int k = 0; k < dim.d; k++) th(j, k) = 2 * M_PI * chi_exp(dim, lab_mul(dim, j, k)) / den;
    EntanglingGateSpec s = diagonal_gate(dim, th);
    s.name = "cz";
    return s;
}

EntanglingGateSpec named_cx(const DimSpec &dim) {
    std::vector<Mat> blocks;
    for (int k = 0; k < dim.d; k++) blocks.push_back(pauli_X(dim, k));
    EntanglingGateSpec s = block_gate(dim, blocks, phases_of(phase_gate(dim)));
    s.name = "cx";
    return s;
}

EntanglingGateSpec named_light_shift(const DimSpec &dim, double theta) {
    Eigen::MatrixXd th = Eigen::MatrixXd::Constant(dim.d, dim.d, theta);
    for (int k = 0; k < dim.d; k++) th(k, k) = 0;
    EntanglingGateSpec s = diagonal_gate(dim, th);
    s.name = "light_shift";
    s.named_theta = theta;
    return s;
}

std::vector<Mat> gate_blocks(const EntanglingGateSpec &spec) {
    if (spec.kind == GateKind::BlockDiagonal) return spec.blocks;
    std::vector<Mat> out;
    for (int k = 0; k < spec.dim.d; k++) {
        std::vector<double> ph(spec.dim.d);
        for (int j = 0; j < spec.dim.d; j++) ph[j] = spec.theta(k, j);
        out.push_back(diag_phases(ph));
    }
    return out;
}

Mat gate_matrix(const EntanglingGateSpec &spec) {
    int d = spec.dim.d;
    Mat g = Mat::Zero(d * d, d * d);
    auto blocks = gate_blocks(spec);
    for (int k = 0; k < d; k++) g.block(k * d, k * d, d, d) = blocks[k];
    return g;
}

Vec init_state(const EntanglingGateSpec &spec) {
    std::vector<double> ph = spec.init_phases;
    if (ph.empty()) ph.assign(spec.dim.d, 0.0);
    return diag_phases(ph) * plus_state(spec.dim);
}

Vec resource_pair(const EntanglingGateSpec &spec) {
    return gate_matrix(spec) * kron(plus_state(spec.dim), init_state(spec));
}

IntrinsicGate intrinsic_from_matrix(const DimSpec &dim, const Mat &g) {
    IntrinsicGate r;
    r.dim = dim;
    r.matrix = g;
    r.unitary = is_unitary(g);
    if (!r.unitary) return r;
    ConjugationResult c = conjugation_table(g, dim);
    if (c.clifford) {
        r.cert = c.cert;
        try {
            r.pauli_order = pauli_order(g, dim);
        } catch (const Error &) {
        }
    }
    return r;
}

IntrinsicGate intrinsic_of_block(const EntanglingGateSpec &spec) {
    const int d = spec.dim.d;
    auto blocks = gate_blocks(spec);
    Vec phi = init_state(spec);
    Mat g(d, d);
    for (int j = 0; j < d; j++) g.col(j) = blocks[j] * phi;
    return intrinsic_from_matrix(spec.dim, g);
}

IntrinsicGate intrinsic_of_diagonal(const EntanglingGateSpec &spec) {
    if (spec.kind != GateKind::Diagonal) throw Error(ErrorCode::InvalidArgument, "gate is not diagonal");
    return intrinsic_of_block(spec);
}

IntrinsicGate intrinsic_of(const EntanglingGateSpec &spec) {
    return intrinsic_of_block(spec);
}

Mat offdiag_coeffs(const EntanglingGateSpec &spec) {
    if (spec.kind != GateKind::Diagonal) throw Error(ErrorCode::InvalidArgument, "gate is not diagonal");
    const int d = spec.dim.d;
    Mat c = Mat::Zero(d, d);
    for (int j = 0; j < d; j++)
        for (int k = 0; k < d; k++) {
            for (int a = 0; a < d; a++) c(j, k) += std::polar(1.0, spec.theta(j, a) - spec.theta(k, a));
            c(j, k) /= (double)d;
        }
    return c;
}

double light_shift_angle(int d) {
    if (d < 2) throw Error(ErrorCode::DimensionMismatch, "d must be at least 2");
    double c = 1.0 - d / 2.0;
    if (c < -1.0) throw Error(ErrorCode::NoRealSolution, "cos(theta) = 1 - d/2 has no real solution for d >= 5");
    if (c == -1.0) return M_PI;
    return std::acos(c);
}

Mat twisted_cz(const DimSpec &dim, int n, int frobenius) {
    const int d = dim.d;
    int den = dim.phase_den();
    Mat g = Mat::Zero(d * d, d * d);
    int nl = lab_int(dim, n);
    for (int j = 0; j < d; j++)
        for (int k = 0; k < d; k++) {
            int arg = lab_mul(dim, nl, lab_mul(dim, j, frob(dim, k, frobenius)));
            g(j * d + k, j * d + k) = root_of_unity(chi_exp(dim, arg), den);
        }
    return g;
}

DiagonalFactorization factor_diagonal_clifford(const EntanglingGateSpec &spec) {
    if (spec.kind != GateKind::Diagonal) throw Error(ErrorCode::InvalidArgument, "gate is not diagonal");
    const DimSpec &dim = spec.dim;
    const int d = dim.d;
    Mat ge = gate_matrix(spec);
    if (!conjugation_table(ge, dim).clifford) throw Error(ErrorCode::NotClifford, "entangling gate is not Clifford");
    int n_max = dim.is_field() ? dim.p : d;
    int r_max = dim.is_field() ? dim.m : 1;
    std::vector<int> order;
    for (int n = 1; n < n_max; n++) order.push_back(n);
    order.push_back(0);
    for (int r = 0; r < r_max; r++) {
        for (int n : order) {
            Mat kern = twisted_cz(dim, n, r);
            // rank-one test on the remaining phases
            Mat rem(d, d);
            for (int j = 0; j < d; j++)
                for (int k = 0; k < d; k++) rem(j, k) = ge(j * d + k, j * d + k) * std::conj(kern(j * d + k, j * d + k));
            Mat c1 = Mat::Zero(d, d), c2 = Mat::Zero(d, d);
            for (int j = 0; j < d; j++) c1(j, j) = rem(j, 0) / rem(0, 0);
            for (int k = 0; k < d; k++) c2(k, k) = rem(0, k);
            c2 = phase_normalized(c2);
            Mat rebuilt = kron(c1, c2) * kern;
            if (dist_up_to_phase(rebuilt, ge) > kTol) continue;
            if (!conjugation_table(c1, dim).clifford || !conjugation_table(c2, dim).clifford) continue;
            return DiagonalFactorization{c1, c2, n, r};
        }
    }
    throw Error(ErrorCode::NotClifford, "no (C1 x C2) CZ^N factorization found");
}

ControlledPauliFactorization factor_block_controlled_pauli(const EntanglingGateSpec &spec) {
    const DimSpec &dim = spec.dim;
    const int d = dim.d;
    auto blocks = gate_blocks(spec);
    Mat u0 = phase_normalized(blocks[0]);
    Mat q = u0.adjoint() * blocks[1];
    auto pw = match_pauli(q, dim, 1);
    if (!pw) {
        pw = match_pauli(phase_normalized(q), dim, 1);
        if (!pw) {
            auto any = pauli_quotient(q, Mat::Identity(d, d), dim, 1);
            if (!any) throw Error(ErrorCode::NotControlledPauliForm, "U0^-1 U1 is not a Pauli operator");
            pw = any;
        }
    }
    Mat p = matrix_of_pauli(*pw).m;
    ControlledPauliFactorization f;
    f.c2 = u0;
    f.p = *pw;
    f.c1 = Mat::Zero(d, d);
    Mat pk = Mat::Identity(d, d);
    for (int k = 0; k < d; k++) {
        Mat expect = u0 * pk;
        cplx ov = (expect.adjoint() * blocks[k]).trace() / (double)d;
        if (std::abs(std::abs(ov) - 1.0) > kPauliTol || max_abs(blocks[k] - (ov / std::abs(ov)) * expect) > kPauliTol) {
            throw Error(ErrorCode::NotControlledPauliForm, "block " + std::to_string(k) + " is not U0 P^k up to phase");
        }
        f.theta.push_back(std::arg(ov));
        f.c1(k, k) = ov / std::abs(ov);
        pk = p * pk;
    }
    if (!conjugation_table(u0, dim).clifford) throw Error(ErrorCode::NotControlledPauliForm, "U0 is not Clifford");
    return f;
}

}  // namespace qmbqc
