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

#ifndef QMBQC_COMPILER_HPP
#define QMBQC_COMPILER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmbqc/resource.hpp"

namespace qmbqc {

struct PatternStep {
    std::vector<double> phases;  // D_phi = diag(e^{i phi_j})
    bool adaptive = true;
};

/// Steps realize G_I D_{phi_{L-1}} ... G_I D_{phi_0}; index 0 acts first.
/// frame semantics: product = frame * target up to global phase.
struct MeasurementPattern {
    DimSpec dim;
    IntrinsicGate intrinsic;
    std::vector<PatternStep> steps;
    PauliWord frame;
};

Mat pattern_unitary(const MeasurementPattern &pattern);

/// Eigenbasis sources: Z(1) and X(1)Z(a) for every a.
std::vector<PauliWord> mub_paulis(const DimSpec &dim);
/// Columns are the common eigenbasis of the commuting class of w.
Mat pauli_eigenbasis(const PauliWord &w);

enum class HermitianVariant { Mub, Weyl };

struct HermitianElement {
    Mat m;
    std::optional<PauliWord> pauli;  // mub: basis source, k = eigenvector index
    int k = 0;
    int a = 0, b = 0, part = 0;  // weyl: N(a,b), part 0 real and 1 imaginary
};

struct HermitianBasis {
    DimSpec dim;
    HermitianVariant variant = HermitianVariant::Mub;
    std::vector<HermitianElement> elements;
};

HermitianBasis hermitian_basis(const DimSpec &dim, HermitianVariant variant);
/// Real rank of the elements as vectors in R^{2 d^2}.
int gram_rank(const HermitianBasis &basis);
std::vector<double> expand_hermitian(const Mat &h, const HermitianBasis &basis);

struct CompileOptions {
    std::uint64_t seed = 1;
    int restarts = 32;
    int max_sweeps = 4000;
    double threshold = 1e-6;
};

/// Residual 1 - |tr(V^dag F U)|/d of a pattern against a target, F the pattern frame.
double pattern_residual(const MeasurementPattern &pattern, const Mat &u);

MeasurementPattern compile_unitary(const Mat &u, const IntrinsicGate &gi, const CompileOptions &opt = {});
std::vector<MeasurementPattern> compile_unitaries(const std::vector<Mat> &targets, const IntrinsicGate &gi,
                                                  const CompileOptions &opt = {});
MeasurementPattern compile_clifford(const Mat &c, const IntrinsicGate &gi);
MeasurementPattern transport_pattern(const IntrinsicGate &gi);

}  // namespace qmbqc

#endif
