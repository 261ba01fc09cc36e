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

#ifndef QMBQC_GALOIS_HPP
#define QMBQC_GALOIS_HPP

#include <complex>
#include <memory>
#include <vector>

#include "qmbqc/errors.hpp"

namespace qmbqc {

enum class Formalism { IntegerRing, FiniteField };

namespace detail {
struct FieldTables;
}

/// Dimension descriptor. Elements of the underlying ring or field are
/// addressed by labels 0..d-1; for GF(p^m) the label of a_0 + a_1 xi + ...
/// is a_0 + a_1 p + a_2 p^2 + ...
struct DimSpec {
    Formalism kind = Formalism::IntegerRing;
    int d = 0;
    int p = 0;
    int m = 1;
    std::vector<int> poly;
    std::vector<int> gr_poly;
    std::shared_ptr<const detail::FieldTables> tab;

    bool is_field() const {
        return kind == Formalism::FiniteField;
    }
    /// Denominator of exact phase exponents: 2d for Z_d, lcm(2d, 4p) for GF(p^m).
    int phase_den() const;
    bool operator==(const DimSpec &o) const;
    bool operator!=(const DimSpec &o) const {
        return !(*this == o);
    }
};

DimSpec make_ring(int d);
/// Empty poly selects the default polynomial. gr_poly is only consulted for p = 2, m > 1.
DimSpec make_field(int p, int m, std::vector<int> poly = {}, std::vector<int> gr_poly = {});

bool is_prime(int n);
bool has_root_mod(const std::vector<int> &poly, int p);

struct FieldElem {
    std::vector<int> coeffs;
    bool operator==(const FieldElem &o) const {
        return coeffs == o.coeffs;
    }
};

struct GaloisRingElem {
    std::vector<int> coeffs;
    bool operator==(const GaloisRingElem &o) const {
        return coeffs == o.coeffs;
    }
};

FieldElem elem_of(const DimSpec &dim, int label);
int label_of(const DimSpec &dim, const FieldElem &e);

enum class FieldOp { Add, Mul, InvOfA };
FieldElem field_arith(const DimSpec &dim, const FieldElem &a, const FieldElem &b, FieldOp op);
int field_trace(const DimSpec &dim, const FieldElem &t);
std::complex<double> character(const DimSpec &dim, const FieldElem &t);

GaloisRingElem gr_lift(const DimSpec &dim, const FieldElem &e);
GaloisRingElem gr_add(const DimSpec &dim, const GaloisRingElem &a, const GaloisRingElem &b);
GaloisRingElem gr_mul(const DimSpec &dim, const GaloisRingElem &a, const GaloisRingElem &b);
GaloisRingElem gr_neg(const DimSpec &dim, const GaloisRingElem &a);
int galois_ring_trace(const DimSpec &dim, const GaloisRingElem &t);
std::complex<double> chi4(const DimSpec &dim, const GaloisRingElem &t);

/// Label-level arithmetic. Integer-ring dims use arithmetic mod d.
int lab_add(const DimSpec &dim, int a, int b);
int lab_neg(const DimSpec &dim, int a);
int lab_sub(const DimSpec &dim, int a, int b);
int lab_mul(const DimSpec &dim, int a, int b);
/// Multiplicative inverse; throws ZeroInverse for zero or non-units.
int lab_inv(const DimSpec &dim, int a);
bool lab_is_unit(const DimSpec &dim, int a);
/// Label of the integer k embedded in the prime subring.
int lab_int(const DimSpec &dim, long long k);
int lab_trace(const DimSpec &dim, int a);
/// Exponent numerator (over phase_den) of chi(t), or of omega^t in Z_d.
int chi_exp(const DimSpec &dim, int t);
/// Exponent numerator (over phase_den) of chi_4(lift(a) * lift(b)); p = 2 only.
int chi4_lift_prod_exp(const DimSpec &dim, int a, int b);
/// Label of the unique square root (p = 2 only).
int lab_sqrt2(const DimSpec &dim, int a);

std::complex<double> root_of_unity(int num, int den);

}  // namespace qmbqc

#endif
