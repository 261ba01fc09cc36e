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

#ifndef QMBQC_RESOURCE_HPP
#define QMBQC_RESOURCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmbqc/clifford.hpp"

namespace qmbqc {

enum class GateKind { Diagonal, BlockDiagonal };

/// Two-qudit entangling gate sum_k |k><k| (x) U_k acting on (control, target).
/// Resource qudits start in D_phi|0_X>; diagonal gates default to phi = 0.
struct EntanglingGateSpec {
    DimSpec dim;
    GateKind kind = GateKind::Diagonal;
    Eigen::MatrixXd theta;  // Diagonal: G|jk> = e^{i theta_jk}|jk>
    std::vector<Mat> blocks;
    std::vector<double> init_phases;
    std::string name;  // "cz", "cx", "light_shift" or empty
    double named_theta = 0;
};

EntanglingGateSpec diagonal_gate(const DimSpec &dim, const Eigen::MatrixXd &theta);
EntanglingGateSpec block_gate(const DimSpec &dim, const std::vector<Mat> &blocks, const std::vector<double> &init_phases);
EntanglingGateSpec named_cz(const DimSpec &dim);
EntanglingGateSpec named_cx(const DimSpec &dim);
EntanglingGateSpec named_light_shift(const DimSpec &dim, double theta);

Mat gate_matrix(const EntanglingGateSpec &spec);
std::vector<Mat> gate_blocks(const EntanglingGateSpec &spec);
Vec init_state(const EntanglingGateSpec &spec);
/// G_E (|+> (x) |phi>), the two-qudit resource pair.
Vec resource_pair(const EntanglingGateSpec &spec);

struct IntrinsicGate {
    DimSpec dim;
    Mat matrix;
    bool unitary = false;
    std::optional<CliffordCert> cert;
    std::optional<int> pauli_order;
};

IntrinsicGate intrinsic_of_diagonal(const EntanglingGateSpec &spec);
IntrinsicGate intrinsic_of_block(const EntanglingGateSpec &spec);
IntrinsicGate intrinsic_of(const EntanglingGateSpec &spec);
/// Certifies an arbitrary single-qudit matrix as an intrinsic gate.
IntrinsicGate intrinsic_from_matrix(const DimSpec &dim, const Mat &g);

Mat offdiag_coeffs(const EntanglingGateSpec &spec);
double light_shift_angle(int d);

struct DiagonalFactorization {
    Mat c1;
    Mat c2;
    int n = 0;
    int frobenius = 0;  // kernel chi(N j k^{p^r}); 0 is the plain CZ^N
};
DiagonalFactorization factor_diagonal_clifford(const EntanglingGateSpec &spec);
/// chi(N j sigma^r(k)) as a d^2 x d^2 diagonal matrix.
Mat twisted_cz(const DimSpec &dim, int n, int frobenius);

struct ControlledPauliFactorization {
    Mat c1;
    Mat c2;
    PauliWord p;
    std::vector<double> theta;
};
ControlledPauliFactorization factor_block_controlled_pauli(const EntanglingGateSpec &spec);

}  // namespace qmbqc

#endif
