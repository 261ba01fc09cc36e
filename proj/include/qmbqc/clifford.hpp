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

#ifndef QMBQC_CLIFFORD_HPP
#define QMBQC_CLIFFORD_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmbqc/pauli.hpp"

namespace qmbqc {

/// Single-qudit Clifford action Z(z) -> Z(a z) X(b z), X(x) -> Z(c x) X(e x), i.e. [[a, c], [b, e]].
struct SymplecticRep {
    DimSpec dim;
    int a = 1, b = 0, c = 0, e = 1;
    int phase_z = 0;  // phase exponent of the image of Z(1)
    int phase_x = 0;  // phase exponent of the image of X(1)

    bool operator==(const SymplecticRep &o) const {
        return a == o.a && b == o.b && c == o.c && e == o.e;
    }
};

struct CliffordCert {
    DimSpec dim;
    int n = 1;
    std::vector<PauliWord> generators;
    std::vector<PauliWord> images;
    std::optional<SymplecticRep> rep;  // single-qudit gates acting linearly over the field
    int order = 0;                     // least k with U^k proportional to I, 0 if above the cap
    int pauli_order = 0;               // least k with U^k proportional to a Pauli, 0 if above d^2
};

struct ConjugationResult {
    bool clifford = false;
    CliffordCert cert;
    std::optional<PauliWord> offending;
};

/// Finds phase * P equal to m within tol (max norm), with the phase rounded to the exact grid.
std::optional<PauliWord> match_pauli(const Mat &m, const DimSpec &dim, int n, double tol = kPauliTol);
/// U P U^dag as an exact word; throws NotClifford.
PauliWord conjugate_word(const Mat &u, const PauliWord &p, double tol = kPauliTol);
/// Pauli generators Z(e_i), X(e_i) per site (e_i = p^i labels; Z, X for the integer ring).
std::vector<PauliWord> pauli_generators(const DimSpec &dim, int n);

ConjugationResult conjugation_table(const Mat &u, const DimSpec &dim, double tol = kPauliTol);
/// Least k >= 1 with U^k a Pauli up to phase, capped at d^2 (OrderCapExceeded).
int pauli_order(const Mat &u, const DimSpec &dim);

struct UniversalityWitness {
    bool universal = false;
    int a = 0;
    int b = 0;
};
UniversalityWitness universality_check(const CliffordCert &cert);

SymplecticRep sym_identity(const DimSpec &dim);
SymplecticRep sym_hadamard(const DimSpec &dim);
SymplecticRep sym_shear(const DimSpec &dim, int l);
SymplecticRep sym_mult(const DimSpec &dim, int lambda);
SymplecticRep sym_mul(const SymplecticRep &x, const SymplecticRep &y);
SymplecticRep sym_inv(const SymplecticRep &x);
int sym_det(const SymplecticRep &x);
std::vector<SymplecticRep> all_symplectic(const DimSpec &dim);

enum class GenKind { Intrinsic, IntrinsicInverse, Shear, Hadamard, Mult };
struct GenFactor {
    GenKind kind;
    int param = 0;
};
/// Operator product; element 0 is the leftmost factor.
using GenWord = std::vector<GenFactor>;

Mat realize(const GenWord &word, const DimSpec &dim, const Mat &gi = Mat());
SymplecticRep word_symplectic(const GenWord &word, const DimSpec &dim,
                              const std::optional<SymplecticRep> &gi = std::nullopt);
std::string word_to_string(const GenWord &word);

/// Five-factor word S^{1-a/b} G S^{1/b^2} G^{-1} S^{a/b+1} with symplectic product [[0,1],[-1,0]].
GenWord hadamard_from_intrinsic(const CliffordCert &gi_cert);
/// H S(l) H S(1/l) H S(l), the symplectic matrix of M(l).
GenWord mult_gate_decomposition(const DimSpec &dim, int lambda);
/// Rep sending (m, n) to (l, 0), l = gcd(m, n) (1 over a field).
std::pair<SymplecticRep, int> map_pauli_to_Z(const DimSpec &dim, int m, int n);
/// Shortest word over {H, S(l)} with the given symplectic matrix.
GenWord synthesis_word(const SymplecticRep &rep);
Mat synthesize(const SymplecticRep &rep);

/// a = frame * b up to global phase, with frame a Pauli word.
std::optional<PauliWord> pauli_quotient(const Mat &a, const Mat &b, const DimSpec &dim, int n = 1,
                                        double tol = kPauliTol);

}  // namespace qmbqc

#endif
