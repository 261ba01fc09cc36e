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

#include "qmbqc/pauli.hpp"

namespace qmbqc {

namespace {

int pmod(long long a, int q) {
    long long r = a % q;
    return (int)(r < 0 ? r + q : r);
}

void require_same(const PauliWord &a, const PauliWord &b) {
    if (a.dim != b.dim || a.n != b.n) throw Error(ErrorCode::DimensionMismatch, "pauli words differ in shape");
}

}  // namespace

bool PauliWord::operator==(const PauliWord &o) const {
    return dim == o.dim && n == o.n && z == o.z && x == o.x && pmod(phase_num, phase_den) == pmod(o.phase_num, o.phase_den);
}

bool PauliWord::same_operator_up_to_phase(const PauliWord &o) const {
    return dim == o.dim && n == o.n && z == o.z && x == o.x;
}

bool PauliWord::is_identity_up_to_phase() const {
    for (int k = 0; k < n; k++) {
        if (z[k] != 0 || x[k] != 0) return false;
    }
    return true;
}

cplx PauliWord::phase() const {
    return root_of_unity(phase_num, phase_den);
}

PauliWord make_word(const DimSpec &dim, std::vector<int> z, std::vector<int> x, int phase_num) {
    if (z.size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "z and x lengths differ");
    for (size_t k = 0; k < z.size(); k++) {
        if (z[k] < 0 || z[k] >= dim.d || x[k] < 0 || x[k] >= dim.d) {
            throw Error(ErrorCode::DimensionMismatch, "exponent label out of range");
        }
    }
    PauliWord w;
    w.dim = dim;
    w.n = (int)z.size();
    w.z = std::move(z);
    w.x = std::move(x);
    w.phase_den = dim.phase_den();
    w.phase_num = pmod(phase_num, w.phase_den);
    return w;
}

PauliWord identity_word(const DimSpec &dim, int n) {
    return make_word(dim, std::vector<int>(n, 0), std::vector<int>(n, 0));
}

PauliWord site_word(const DimSpec &dim, int n, int site, int z, int x, int phase_num) {
    std::vector<int> zs(n, 0), xs(n, 0);
    zs[site] = z;
    xs[site] = x;
    return make_word(dim, zs, xs, phase_num);
}

Mat pauli_Z(const DimSpec &dim, int z) {
    Mat r = Mat::Zero(dim.d, dim.d);
    int den = dim.phase_den();
    for (int u = 0; u < dim.d; u++) r(u, u) = root_of_unity(chi_exp(dim, lab_mul(dim, z, u)), den);
    return r;
}

Mat pauli_X(const DimSpec &dim, int x) {
    Mat r = Mat::Zero(dim.d, dim.d);
    for (int u = 0; u < dim.d; u++) r(lab_add(dim, u, x), u) = 1;
    return r;
}

DenseOperator matrix_of_pauli(const PauliWord &w) {
    std::vector<Mat> ops;
    for (int k = 0; k < w.n; k++) ops.push_back(pauli_Z(w.dim, w.z[k]) * pauli_X(w.dim, w.x[k]));
    Mat m = kron_all(ops) * w.phase();
    return DenseOperator{w.dim.d, w.n, m};
}

PauliWord normal_form(const PauliWord &a, const PauliWord &b) {
    require_same(a, b);
    const DimSpec &dim = a.dim;
    PauliWord r = a;
    long long ph = (long long)a.phase_num + b.phase_num;
    for (int k = 0; k < a.n; k++) {
        // X(xa) Z(zb) = chi(-zb xa) Z(zb) X(xa)
        ph -= chi_exp(dim, lab_mul(dim, b.z[k], a.x[k]));
        r.z[k] = lab_add(dim, a.z[k], b.z[k]);
        r.x[k] = lab_add(dim, a.x[k], b.x[k]);
    }
    r.phase_num = pmod(ph, r.phase_den);
    return r;
}

PauliWord word_inverse(const PauliWord &w) {
    // (c Z(z) X(x))^{-1} = c^{-1} X(-x) Z(-z) = c^{-1} chi(-zx) Z(-z) X(-x)
    PauliWord r = w;
    long long ph = -(long long)w.phase_num;
    for (int k = 0; k < w.n; k++) {
        ph -= chi_exp(w.dim, lab_mul(w.dim, w.z[k], w.x[k]));
        r.z[k] = lab_neg(w.dim, w.z[k]);
        r.x[k] = lab_neg(w.dim, w.x[k]);
    }
    r.phase_num = pmod(ph, r.phase_den);
    return r;
}

PauliWord word_power(const PauliWord &w, int k) {
    PauliWord base = k >= 0 ? w : word_inverse(w);
    PauliWord r = identity_word(w.dim, w.n);
    for (int i = 0; i < (k >= 0 ? k : -k); i++) r = normal_form(r, base);
    return r;
}

PauliWord with_phase(const PauliWord &w, int extra_num) {
    PauliWord r = w;
    r.phase_num = pmod((long long)w.phase_num + extra_num, w.phase_den);
    return r;
}

int tau_exp(const DimSpec &dim) {
    if (dim.is_field()) throw Error(ErrorCode::WrongFormalism, "tau_d belongs to the integer ring");
    // tau_d = (-1)^d e^{i pi / d} = exp(2 pi i (d^2 + 1) / (2d)); d + 1 only works for odd d
    return (int)pmod((long long)dim.d * dim.d + 1, 2 * dim.d);
}

PauliWord y_word(const DimSpec &dim) {
    PauliWord xi = make_word(dim, {0}, {lab_neg(dim, 1)});
    PauliWord zi = make_word(dim, {lab_neg(dim, 1)}, {0});
    return with_phase(normal_form(xi, zi), tau_exp(dim));
}

PauliWord weyl(const DimSpec &dim, int z, int x, const FieldElem &t) {
    if (!dim.is_field()) throw Error(ErrorCode::WrongFormalism, "Weyl operators need a finite field");
    if (dim.p == 2) throw Error(ErrorCode::WrongCharacteristic, "p = 2 takes a Galois ring phase");
    int tl = label_of(dim, t);
    int half = lab_inv(dim, lab_int(dim, 2));
    int arg = lab_sub(dim, tl, lab_mul(dim, half, lab_mul(dim, z, x)));
    return make_word(dim, {z}, {x}, chi_exp(dim, arg));
}

PauliWord weyl(const DimSpec &dim, int z, int x, const GaloisRingElem &t) {
    if (!dim.is_field()) throw Error(ErrorCode::WrongFormalism, "Weyl operators need a finite field");
    if (dim.p != 2) throw Error(ErrorCode::WrongCharacteristic, "Galois ring phases need p = 2");
    int den = dim.phase_den();
    int tt = galois_ring_trace(dim, t);
    // chi_4(-zx) = i^{-tr_4(lift z lift x)}
    int ph = tt * (den / 4) - chi4_lift_prod_exp(dim, z, x);
    return make_word(dim, {z}, {x}, ph);
}

std::vector<PauliWord> all_words(const DimSpec &dim, int n) {
    std::vector<PauliWord> out;
    long long count = 1;
    for (int k = 0; k < 2 * n; k++) count *= dim.d;
    for (long long idx = 0; idx < count; idx++) {
        std::vector<int> z(n), x(n);
        long long r = idx;
        for (int k = n - 1; k >= 0; k--) {
            x[k] = (int)(r % dim.d);
            r /= dim.d;
            z[k] = (int)(r % dim.d);
            r /= dim.d;
        }
        out.push_back(make_word(dim, z, x));
    }
    return out;
}

}  // namespace qmbqc
