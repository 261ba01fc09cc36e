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

#include "qmbqc/gates.hpp"

#include <cmath>

#include "qmbqc/pauli.hpp"

namespace qmbqc {

Mat hadamard(const DimSpec &dim) {
    int d = dim.d, den = dim.phase_den();
    Mat h(d, d);
    for (int j = 0; j < d; j++) {
        for (int k = 0; k < d; k++) h(j, k) = root_of_unity(chi_exp(dim, lab_mul(dim, j, k)), den) / std::sqrt((double)d);
    }
    return h;
}

Mat phase_gate(const DimSpec &dim) {
    int d = dim.d, den = dim.phase_den();
    Mat s = Mat::Zero(d, d);
    for (int x = 0; x < d; x++) {
        int e;
        if (!dim.is_field()) {
            e = (int)(((long long)tau_exp(dim) * x % den) * x % den);
        } else if (dim.p == 2) {
            e = chi4_lift_prod_exp(dim, x, x);
        } else {
            int half = lab_inv(dim, lab_int(dim, 2));
            e = chi_exp(dim, lab_mul(dim, half, lab_mul(dim, x, x)));
        }
        s(x, x) = root_of_unity(e, den);
    }
    return s;
}

Mat phase_gate_lambda(const DimSpec &dim, int lambda) {
    if (!dim.is_field()) return mat_pow(phase_gate(dim), lambda);
    if (lambda == 0) return identity(dim.d);
    if (dim.p == 2) return mult_gate(dim, lambda) * phase_gate(dim) * mult_gate(dim, lab_inv(dim, lambda));
    int d = dim.d, den = dim.phase_den();
    int half = lab_inv(dim, lab_int(dim, 2));
    Mat s = Mat::Zero(d, d);
    for (int x = 0; x < d; x++) s(x, x) = root_of_unity(chi_exp(dim, lab_mul(dim, half, lab_mul(dim, lambda, lab_mul(dim, x, x)))), den);
    return s;
}

Mat shear_gate(const DimSpec &dim, int l) {
    if (l == 0) return identity(dim.d);
    if (dim.is_field() && dim.p == 2) {
        // M(mu) S M(mu^{-1}) shears by mu^{-2}.
        int mu = lab_sqrt2(dim, lab_inv(dim, l));
        return phase_gate_lambda(dim, mu);
    }
    return phase_gate_lambda(dim, l);
}

Mat mult_gate(const DimSpec &dim, int lambda) {
    lab_inv(dim, lambda);
    Mat m = Mat::Zero(dim.d, dim.d);
    for (int x = 0; x < dim.d; x++) m(lab_mul(dim, lambda, x), x) = 1;
    return m;
}

Mat cz_gate(const DimSpec &dim, int power) {
    int d = dim.d, den = dim.phase_den();
    Mat g = Mat::Zero(d * d, d * d);
    int pw = lab_int(dim, power);
    for (int j = 0; j < d; j++) {
        for (int k = 0; k < d; k++) g(j * d + k, j * d + k) = root_of_unity(chi_exp(dim, lab_mul(dim, pw, lab_mul(dim, j, k))), den);
    }
    return g;
}

Mat cx_gate(const DimSpec &dim) {
    int d = dim.d;
    Mat g = Mat::Zero(d * d, d * d);
    for (int k = 0; k < d; k++) g.block(k * d, k * d, d, d) = pauli_X(dim, k);
    return g;
}

Vec plus_state(const DimSpec &dim) {
    return Vec::Constant(dim.d, 1.0 / std::sqrt((double)dim.d));
}

Vec x_basis_state(const DimSpec &dim, int k) {
    return pauli_Z(dim, k) * plus_state(dim);
}

Mat x_basis(const DimSpec &dim) {
    Mat b(dim.d, dim.d);
    for (int k = 0; k < dim.d; k++) b.col(k) = x_basis_state(dim, k);
    return b;
}

}  // namespace qmbqc
