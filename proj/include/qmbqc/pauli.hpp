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

#ifndef QMBQC_PAULI_HPP
#define QMBQC_PAULI_HPP

#include <vector>

#include "qmbqc/galois.hpp"
#include "qmbqc/linalg.hpp"

namespace qmbqc {

/// phase * (Z(z_0) X(x_0)) (x) ... (x) (Z(z_{n-1}) X(x_{n-1})), phase = exp(2 pi i num / den).
struct PauliWord {
    DimSpec dim;
    int n = 0;
    std::vector<int> z;
    std::vector<int> x;
    int phase_num = 0;
    int phase_den = 1;

    bool operator==(const PauliWord &o) const;
    bool same_operator_up_to_phase(const PauliWord &o) const;
    bool is_identity_up_to_phase() const;
    cplx phase() const;
};

PauliWord make_word(const DimSpec &dim, std::vector<int> z, std::vector<int> x, int phase_num = 0);
PauliWord identity_word(const DimSpec &dim, int n);
/// Single-qudit word embedded at `site` of n.
PauliWord site_word(const DimSpec &dim, int n, int site, int z, int x, int phase_num = 0);

Mat pauli_Z(const DimSpec &dim, int z);
Mat pauli_X(const DimSpec &dim, int x);
DenseOperator matrix_of_pauli(const PauliWord &w);

/// Product a * b rewritten as phase * Z-part * X-part.
PauliWord normal_form(const PauliWord &a, const PauliWord &b);
PauliWord word_inverse(const PauliWord &w);
PauliWord word_power(const PauliWord &w, int k);
PauliWord with_phase(const PauliWord &w, int extra_num);

/// Y_d = tau_d X^{-1} Z^{-1} (integer ring).
PauliWord y_word(const DimSpec &dim);
/// Exponent numerator of tau_d over phase_den (integer ring).
int tau_exp(const DimSpec &dim);

/// Weyl operator W(z, x, t) for odd characteristic.
PauliWord weyl(const DimSpec &dim, int z, int x, const FieldElem &t);
/// Weyl operator W(z, x, t) for p = 2, t in GR(4, m).
PauliWord weyl(const DimSpec &dim, int z, int x, const GaloisRingElem &t);

/// Enumerates all n-qudit words with zero phase, ordered by (z, x) labels.
std::vector<PauliWord> all_words(const DimSpec &dim, int n);

}  // namespace qmbqc

#endif
