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

#ifndef QMBQC_GATES_HPP
#define QMBQC_GATES_HPP

#include <vector>

#include "qmbqc/galois.hpp"
#include "qmbqc/linalg.hpp"

namespace qmbqc {

/// Hadamard: (1/sqrt d) sum chi(kj) |j><k| (omega^{kj} for Z_d).
Mat hadamard(const DimSpec &dim);
/// Phase gate: tau^{j^2} (Z_d), chi(2^{-1} x^2) (odd p), chi_4(x^2) (p = 2).
Mat phase_gate(const DimSpec &dim);
/// S(lambda): S^lambda (Z_d), S^F(lambda) (odd p), M(lambda) S M(lambda^{-1}) (p = 2).
Mat phase_gate_lambda(const DimSpec &dim, int lambda);
/// Diagonal Clifford with symplectic matrix [[1, l], [0, 1]] drawn from the phase-gate family.
Mat shear_gate(const DimSpec &dim, int l);
/// M(lambda)|x> = |lambda x>.
Mat mult_gate(const DimSpec &dim, int lambda);
Mat cz_gate(const DimSpec &dim, int power = 1);
Mat cx_gate(const DimSpec &dim);
Vec plus_state(const DimSpec &dim);
/// |k_X> = Z(k)|0_X>.
Vec x_basis_state(const DimSpec &dim, int k);
/// Columns |k_X>.
Mat x_basis(const DimSpec &dim);

}  // namespace qmbqc

#endif
