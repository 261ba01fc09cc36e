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

#include "qmbqc/galois.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qmbqc {

const char *error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
        case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ZeroInverse: return "ZeroInverse";
        case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
        case ErrorCode::MissingRingPolynomial: return "MissingRingPolynomial";
        case ErrorCode::WrongFormalism: return "WrongFormalism";
        case ErrorCode::NonUnitary: return "NonUnitary";
        case ErrorCode::SiteOutOfRange: return "SiteOutOfRange";
        case ErrorCode::ZeroProbabilityForced: return "ZeroProbabilityForced";
        case ErrorCode::NoRealSolution: return "NoRealSolution";
        case ErrorCode::NotClifford: return "NotClifford";
        case ErrorCode::NotControlledPauliForm: return "NotControlledPauliForm";
        case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
        case ErrorCode::UniversalityViolated: return "UniversalityViolated";
        case ErrorCode::NonInvertibleLambda: return "NonInvertibleLambda";
        case ErrorCode::NonHermitian: return "NonHermitian";
        case ErrorCode::CompilationDiverged: return "CompilationDiverged";
        case ErrorCode::UnsupportedFormalism: return "UnsupportedFormalism";
        case ErrorCode::StateTooLarge: return "StateTooLarge";
        case ErrorCode::FrameMismatch: return "FrameMismatch";
        case ErrorCode::NonInvertibleGcd: return "NonInvertibleGcd";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TableMismatch: return "TableMismatch";
    }
    return "Unknown";
}

namespace detail {

struct FieldTables {
    int d = 0;
    std::vector<int> add, mul, neg, inv, trace;
    std::vector<int> tr4_prod;  // p = 2 with ring polynomial available
    std::vector<int> sqrt2;
    bool has_gr = false;
};

}  // namespace detail

namespace {

constexpr int kMaxDim = 1024;

int mod(long long a, int q) {
    long long r = a % q;
    return (int)(r < 0 ? r + q : r);
}

std::vector<int> digits_of(int label, int p, int m) {
    std::vector<int> c(m);
    for (int i = 0; i < m; i++) {
        c[i] = label % p;
        label /= p;
    }
    return c;
}

int label_from(const std::vector<int> &c, int p) {
    int r = 0;
    for (int i = (int)c.size() - 1; i >= 0; i--) {
        r = r * p + c[i];
    }
    return r;
}

// Product of two residue vectors of length m modulo a monic degree-m polynomial over Z_q.
std::vector<int> polymulmod(const std::vector<int> &a, const std::vector<int> &b, const std::vector<int> &poly,
                            int q) {
    int m = (int)a.size();
    std::vector<long long> prod(2 * m - 1, 0);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            prod[i + j] += (long long)a[i] * b[j];
        }
    }
    for (int k = 2 * m - 2; k >= m; k--) {
        long long c = mod(prod[k], q);
        if (c == 0) continue;
        for (int i = 0; i <= m; i++) {
            prod[k - m + i] -= c * poly[i];
        }
    }
    std::vector<int> r(m);
    for (int i = 0; i < m; i++) r[i] = mod(prod[i], q);
    return r;
}

std::vector<int> default_poly(int p, int m) {
    if (m == 1) return {0, 1};
    if (p == 2 && m == 2) return {1, 1, 1};
    if (p == 2 && m == 3) return {1, 1, 0, 1};
    if (p == 3 && m == 2) return {1, 0, 1};
    int count = 1;
    for (int i = 0; i < m; i++) count *= p;
    for (int label = 0; label < count; label++) {
        std::vector<int> c = digits_of(label, p, m);
        c.push_back(1);
        if (!has_root_mod(c, p)) return c;
    }
    throw Error(ErrorCode::ReduciblePolynomial, "no irreducible polynomial found");
}

std::shared_ptr<detail::FieldTables> build_ring_tables(int d) {
    auto t = std::make_shared<detail::FieldTables>();
    t->d = d;
    t->add.resize(d * d);
    t->mul.resize(d * d);
    t->neg.resize(d);
    t->inv.assign(d, -1);
    t->trace.resize(d);
    for (int a = 0; a < d; a++) {
        t->neg[a] = mod(-a, d);
        t->trace[a] = a;
        for (int b = 0; b < d; b++) {
            t->add[a * d + b] = (a + b) % d;
            t->mul[a * d + b] = (a * b) % d;
            if ((a * b) % d == 1) t->inv[a] = b;
        }
    }
    return t;
}

std::shared_ptr<detail::FieldTables> build_field_tables(const DimSpec &dim) {
    int d = dim.d, p = dim.p, m = dim.m;
    auto t = std::make_shared<detail::FieldTables>();
    t->d = d;
    t->add.resize(d * d);
    t->mul.resize(d * d);
    t->neg.resize(d);
    t->inv.assign(d, -1);
    t->trace.resize(d);
    std::vector<std::vector<int>> dig(d);
    for (int a = 0; a < d; a++) dig[a] = digits_of(a, p, m);
    for (int a = 0; a < d; a++) {
        std::vector<int> n(m);
        for (int i = 0; i < m; i++) n[i] = mod(-dig[a][i], p);
        t->neg[a] = label_from(n, p);
        for (int b = 0; b < d; b++) {
            std::vector<int> s(m);
            for (int i = 0; i < m; i++) s[i] = (dig[a][i] + dig[b][i]) % p;
            t->add[a * d + b] = label_from(s, p);
            t->mul[a * d + b] = label_from(polymulmod(dig[a], dig[b], dim.poly, p), p);
        }
    }
    for (int a = 1; a < d; a++) {
        for (int b = 1; b < d; b++) {
            if (t->mul[a * d + b] == 1) t->inv[a] = b;
        }
    }
    // tr(a) = sum_j a^(p^j), landing in the prime subfield.
    for (int a = 0; a < d; a++) {
        int power = a;
        int acc = 0;
        for (int j = 0; j < m; j++) {
            acc = t->add[acc * d + power];
            int next = 1;
            for (int k = 0; k < p; k++) next = t->mul[next * d + power];
            power = next;
        }
        if (acc >= p) throw Error(ErrorCode::ReduciblePolynomial, "trace left the prime subfield");
        t->trace[a] = acc;
    }
    if (p == 2) {
        t->sqrt2.assign(d, -1);
        for (int a = 0; a < d; a++) t->sqrt2[t->mul[a * d + a]] = a;
        if (m == 1 || !dim.gr_poly.empty()) {
            t->has_gr = true;
            t->tr4_prod.resize(d * d);
            for (int a = 0; a < d; a++) {
                for (int b = 0; b < d; b++) {
                    GaloisRingElem x{dig[a]}, y{dig[b]};
                    t->tr4_prod[a * d + b] = galois_ring_trace(dim, gr_mul(dim, x, y));
                }
            }
        }
    }
    return t;
}

void require_field(const DimSpec &dim, const FieldElem &e) {
    if ((int)e.coeffs.size() != dim.m) throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
    int q = dim.is_field() ? dim.p : dim.d;
    for (int c : e.coeffs) {
        if (c < 0 || c >= q) throw Error(ErrorCode::DimensionMismatch, "coefficient out of range");
    }
}

void require_gr(const DimSpec &dim, const GaloisRingElem &e) {
    if (!dim.is_field() || dim.p != 2) throw Error(ErrorCode::WrongCharacteristic, "Galois ring needs p = 2");
    if (dim.m > 1 && dim.gr_poly.empty()) {
        throw Error(ErrorCode::MissingRingPolynomial, "no GR(4,m) polynomial configured");
    }
    if ((int)e.coeffs.size() != dim.m) throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; k++) {
        if (n % k == 0) return false;
    }
    return true;
}

bool has_root_mod(const std::vector<int> &poly, int p) {
    for (int x = 0; x < p; x++) {
        long long v = 0;
        for (int i = (int)poly.size() - 1; i >= 0; i--) v = (v * x + poly[i]) % p;
        if (mod(v, p) == 0) return true;
    }
    return false;
}

int DimSpec::phase_den() const {
    if (!is_field()) return 2 * d;
    return std::lcm(2 * d, 4 * p);
}

bool DimSpec::operator==(const DimSpec &o) const {
    return kind == o.kind && d == o.d && p == o.p && m == o.m && poly == o.poly && gr_poly == o.gr_poly;
}

DimSpec make_ring(int d) {
    if (d < 2 || d > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "ring dimension out of range");
    DimSpec dim;
    dim.kind = Formalism::IntegerRing;
    dim.d = d;
    dim.p = 0;
    dim.m = 1;
    dim.tab = build_ring_tables(d);
    return dim;
}

DimSpec make_field(int p, int m, std::vector<int> poly, std::vector<int> gr_poly) {
    if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, "p = " + std::to_string(p));
    if (m < 1 || m > 3) throw Error(ErrorCode::DimensionMismatch, "extension degree must be 1..3");
    int d = 1;
    for (int i = 0; i < m; i++) d *= p;
    if (d > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "field too large");
    if (poly.empty()) poly = default_poly(p, m);
    if ((int)poly.size() != m + 1) throw Error(ErrorCode::DimensionMismatch, "polynomial degree must equal m");
    for (int &c : poly) c = mod(c, p);
    if (poly[m] != 1) throw Error(ErrorCode::InvalidArgument, "polynomial must be monic");
    if (m >= 2 && has_root_mod(poly, p)) throw Error(ErrorCode::ReduciblePolynomial, "polynomial has a root");
    if (p == 2 && m > 1) {
        if (gr_poly.empty() && m == 2) gr_poly = {3, 3, 1};
        if (!gr_poly.empty()) {
            if ((int)gr_poly.size() != m + 1) throw Error(ErrorCode::DimensionMismatch, "ring polynomial degree");
            for (int &c : gr_poly) c = mod(c, 4);
            if (gr_poly[m] != 1) throw Error(ErrorCode::InvalidArgument, "ring polynomial must be monic");
            std::vector<int> red(m + 1);
            for (int i = 0; i <= m; i++) red[i] = gr_poly[i] % 2;
            if (has_root_mod(red, 2)) throw Error(ErrorCode::ReduciblePolynomial, "ring polynomial reducible mod 2");
            if (red != poly) throw Error(ErrorCode::InvalidArgument, "ring polynomial must reduce to the field polynomial");
        }
    } else {
        gr_poly.clear();
    }
    DimSpec dim;
    dim.kind = Formalism::FiniteField;
    dim.d = d;
    dim.p = p;
    dim.m = m;
    dim.poly = poly;
    dim.gr_poly = gr_poly;
    dim.tab = build_field_tables(dim);
    return dim;
}

FieldElem elem_of(const DimSpec &dim, int label) {
    if (label < 0 || label >= dim.d) throw Error(ErrorCode::DimensionMismatch, "label out of range");
    if (!dim.is_field()) return FieldElem{{label}};
    return FieldElem{digits_of(label, dim.p, dim.m)};
}

int label_of(const DimSpec &dim, const FieldElem &e) {
    require_field(dim, e);
    if (!dim.is_field()) return e.coeffs[0];
    return label_from(e.coeffs, dim.p);
}

int lab_add(const DimSpec &dim, int a, int b) {
    return dim.tab->add[a * dim.d + b];
}
int lab_neg(const DimSpec &dim, int a) {
    return dim.tab->neg[a];
}
int lab_sub(const DimSpec &dim, int a, int b) {
    return lab_add(dim, a, lab_neg(dim, b));
}
int lab_mul(const DimSpec &dim, int a, int b) {
    return dim.tab->mul[a * dim.d + b];
}
bool lab_is_unit(const DimSpec &dim, int a) {
    return dim.tab->inv[a] >= 0;
}
int lab_inv(const DimSpec &dim, int a) {
    int r = dim.tab->inv[a];
    if (r < 0) throw Error(ErrorCode::ZeroInverse, "element " + std::to_string(a) + " is not invertible");
    return r;
}
int lab_int(const DimSpec &dim, long long k) {
    return dim.is_field() ? mod(k, dim.p) : mod(k, dim.d);
}
int lab_trace(const DimSpec &dim, int a) {
    return dim.tab->trace[a];
}
int chi_exp(const DimSpec &dim, int t) {
    int den = dim.phase_den();
    if (!dim.is_field()) return mod((long long)t * (den / dim.d), den);
    return mod((long long)dim.tab->trace[t] * (den / dim.p), den);
}
int chi4_lift_prod_exp(const DimSpec &dim, int a, int b) {
    if (!dim.is_field() || dim.p != 2) throw Error(ErrorCode::WrongCharacteristic, "chi_4 needs p = 2");
    if (!dim.tab->has_gr) throw Error(ErrorCode::MissingRingPolynomial, "no GR(4,m) polynomial configured");
    int den = dim.phase_den();
    return mod((long long)dim.tab->tr4_prod[a * dim.d + b] * (den / 4), den);
}
int lab_sqrt2(const DimSpec &dim, int a) {
    if (!dim.is_field() || dim.p != 2) throw Error(ErrorCode::WrongCharacteristic, "square roots need p = 2");
    return dim.tab->sqrt2[a];
}

FieldElem field_arith(const DimSpec &dim, const FieldElem &a, const FieldElem &b, FieldOp op) {
    int la = label_of(dim, a);
    switch (op) {
        case FieldOp::Add: return elem_of(dim, lab_add(dim, la, label_of(dim, b)));
        case FieldOp::Mul: return elem_of(dim, lab_mul(dim, la, label_of(dim, b)));
        case FieldOp::InvOfA: return elem_of(dim, lab_inv(dim, la));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown field op");
}

int field_trace(const DimSpec &dim, const FieldElem &t) {
    return lab_trace(dim, label_of(dim, t));
}

std::complex<double> root_of_unity(int num, int den) {
    int r = mod(num, den);
    // Exact values on the axes keep tables free of rounding noise.
    if ((4LL * r) % den == 0) {
        switch ((4 * r) / den) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
        }
    }
    double a = 2 * M_PI * (double)r / (double)den;
    return {std::cos(a), std::sin(a)};
}

std::complex<double> character(const DimSpec &dim, const FieldElem &t) {
    return root_of_unity(chi_exp(dim, label_of(dim, t)), dim.phase_den());
}

GaloisRingElem gr_lift(const DimSpec &dim, const FieldElem &e) {
    require_field(dim, e);
    if (!dim.is_field() || dim.p != 2) throw Error(ErrorCode::WrongCharacteristic, "lift needs p = 2");
    return GaloisRingElem{e.coeffs};
}

GaloisRingElem gr_add(const DimSpec &dim, const GaloisRingElem &a, const GaloisRingElem &b) {
    require_gr(dim, a);
    require_gr(dim, b);
    GaloisRingElem r{std::vector<int>(dim.m)};
    for (int i = 0; i < dim.m; i++) r.coeffs[i] = mod(a.coeffs[i] + b.coeffs[i], 4);
    return r;
}

GaloisRingElem gr_neg(const DimSpec &dim, const GaloisRingElem &a) {
    require_gr(dim, a);
    GaloisRingElem r{std::vector<int>(dim.m)};
    for (int i = 0; i < dim.m; i++) r.coeffs[i] = mod(-a.coeffs[i], 4);
    return r;
}

GaloisRingElem gr_mul(const DimSpec &dim, const GaloisRingElem &a, const GaloisRingElem &b) {
    require_gr(dim, a);
    require_gr(dim, b);
    std::vector<int> x(dim.m), y(dim.m);
    for (int i = 0; i < dim.m; i++) {
        x[i] = mod(a.coeffs[i], 4);
        y[i] = mod(b.coeffs[i], 4);
    }
    if (dim.m == 1) return GaloisRingElem{{mod(x[0] * y[0], 4)}};
    return GaloisRingElem{polymulmod(x, y, dim.gr_poly, 4)};
}

int galois_ring_trace(const DimSpec &dim, const GaloisRingElem &t) {
    require_gr(dim, t);
    if (dim.m == 1) return mod(t.coeffs[0], 4);
    // Trace of multiplication by t on the Z_4 basis 1, xi, ..., xi^(m-1).
    int acc = 0;
    for (int i = 0; i < dim.m; i++) {
        GaloisRingElem basis{std::vector<int>(dim.m, 0)};
        basis.coeffs[i] = 1;
        acc += gr_mul(dim, t, basis).coeffs[i];
    }
    return mod(acc, 4);
}

std::complex<double> chi4(const DimSpec &dim, const GaloisRingElem &t) {
    return root_of_unity(galois_ring_trace(dim, t), 4);
}

}  // namespace qmbqc
