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

#include "qmbqc/clifford.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "qmbqc/gates.hpp"

namespace qmbqc {

namespace {

int pmod(long long a, int q) {
    long long r = a % q;
    return (int)(r < 0 ? r + q : r);
}

int ipow(int b, int e) {
    int r = 1;
    for (int k = 0; k < e; k++) r *= b;
    return r;
}

int sites_of(const Mat &m, int d) {
    int n = 0;
    long long size = 1;
    while (size < m.rows()) {
        size *= d;
        n++;
    }
    if (size != m.rows() || m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not a qudit operator");
    return n;
}

// any_phase: accept an arbitrary global phase and return the word with phase 0.
std::optional<PauliWord> match_impl(const Mat &m, const DimSpec &dim, int n, double tol, bool any_phase) {
    const int d = dim.d;
    const int size = ipow(d, n);
    if (m.rows() != size || m.cols() != size) return std::nullopt;
    Eigen::Index row = 0;
    m.col(0).cwiseAbs().maxCoeff(&row);
    std::vector<int> x(n);
    for (int s = n - 1, r = (int)row; s >= 0; s--, r /= d) x[s] = r % d;
    std::vector<int> z(n, 0);
    for (int idx = 0; idx < size; idx++) {
        for (int s = n - 1, r = idx; s >= 0; s--, r /= d) z[s] = r % d;
        PauliWord w = make_word(dim, z, x);
        Mat p = matrix_of_pauli(w).m;
        cplx ov = (p.adjoint() * m).trace() / (double)size;
        if (std::abs(std::abs(ov) - 1.0) > tol) continue;
        if (any_phase) {
            if (max_abs(m - (ov / std::abs(ov)) * p) < tol) return w;
            continue;
        }
        int den = w.phase_den;
        int num = pmod(std::llround(std::arg(ov) * den / (2 * M_PI)), den);
        if (max_abs(m - root_of_unity(num, den) * p) < tol) return with_phase(w, num);
    }
    return std::nullopt;
}

SymplecticRep rep_of(const DimSpec &dim, int a, int b, int c, int e) {
    SymplecticRep r;
    r.dim = dim;
    r.a = a;
    r.b = b;
    r.c = c;
    r.e = e;
    return r;
}

int key_of(const SymplecticRep &r) {
    int d = r.dim.d;
    return ((r.a * d + r.b) * d + r.c) * d + r.e;
}

}  // namespace

std::optional<PauliWord> match_pauli(const Mat &m, const DimSpec &dim, int n, double tol) {
    return match_impl(m, dim, n, tol, false);
}

std::optional<PauliWord> pauli_quotient(const Mat &a, const Mat &b, const DimSpec &dim, int n, double tol) {
    return match_impl(a * b.adjoint(), dim, n, tol, true);
}

PauliWord conjugate_word(const Mat &u, const PauliWord &p, double tol) {
    Mat m = u * matrix_of_pauli(p).m * u.adjoint();
    auto w = match_pauli(m, p.dim, p.n, tol);
    if (!w) throw Error(ErrorCode::NotClifford, "conjugate of a Pauli word is not a Pauli word");
    return *w;
}

std::vector<PauliWord> pauli_generators(const DimSpec &dim, int n) {
    std::vector<PauliWord> out;
    int basis = dim.is_field() ? dim.m : 1;
    for (int s = 0; s < n; s++) {
        for (int i = 0; i < basis; i++) {
            int lab = dim.is_field() ? ipow(dim.p, i) : 1;
            out.push_back(site_word(dim, n, s, lab, 0));
            out.push_back(site_word(dim, n, s, 0, lab));
        }
    }
    return out;
}

ConjugationResult conjugation_table(const Mat &u, const DimSpec &dim, double tol) {
    ConjugationResult res;
    int n = sites_of(u, dim.d);
    res.cert.dim = dim;
    res.cert.n = n;
    res.cert.generators = pauli_generators(dim, n);
    for (const auto &g : res.cert.generators) {
        auto w = match_pauli(u * matrix_of_pauli(g).m * u.adjoint(), dim, n, tol);
        if (!w) {
            res.offending = g;
            res.cert.images.clear();
            return res;
        }
        res.cert.images.push_back(*w);
    }
    res.clifford = true;

    if (n == 1) {
        // Linear over the field iff Z(t) -> Z(a t) X(b t) for every basis element t.
        const PauliWord &iz = res.cert.images[0];
        const PauliWord &ix = res.cert.images[1];
        bool linear = true;
        for (size_t i = 1; 2 * i < res.cert.images.size(); i++) {
            int t = res.cert.generators[2 * i].z[0];
            const PauliWord &jz = res.cert.images[2 * i];
            const PauliWord &jx = res.cert.images[2 * i + 1];
            if (jz.z[0] != lab_mul(dim, iz.z[0], t) || jz.x[0] != lab_mul(dim, iz.x[0], t) ||
                jx.z[0] != lab_mul(dim, ix.z[0], t) || jx.x[0] != lab_mul(dim, ix.x[0], t)) {
                linear = false;
            }
        }
        if (linear) {
            SymplecticRep r = rep_of(dim, iz.z[0], iz.x[0], ix.z[0], ix.x[0]);
            r.phase_z = iz.phase_num;
            r.phase_x = ix.phase_num;
            res.cert.rep = r;
        }
    }

    const int d = dim.d;
    Mat pw = u;
    int cap_order = 8 * ipow(d, 2 * n);
    for (int k = 1; k <= cap_order; k++) {
        if (res.cert.pauli_order == 0 && k <= d * d && match_impl(pw, dim, n, tol, true)) res.cert.pauli_order = k;
        if (equal_up_to_phase(pw, Mat::Identity(u.rows(), u.cols()), tol)) {
            res.cert.order = k;
            break;
        }
        pw = u * pw;
    }
    return res;
}

int pauli_order(const Mat &u, const DimSpec &dim) {
    int n = sites_of(u, dim.d);
    Mat pw = u;
    for (int k = 1; k <= dim.d * dim.d; k++) {
        if (match_impl(pw, dim, n, kPauliTol, true)) return k;
        pw = u * pw;
    }
    throw Error(ErrorCode::OrderCapExceeded, "no power up to d^2 is a Pauli word");
}

UniversalityWitness universality_check(const CliffordCert &cert) {
    if (cert.n != 1 || cert.images.empty()) throw Error(ErrorCode::DimensionMismatch, "universality needs a single-qudit cert");
    UniversalityWitness w;
    w.a = cert.images[0].z[0];
    w.b = cert.images[0].x[0];
    w.universal = lab_is_unit(cert.dim, w.b);
    return w;
}

SymplecticRep sym_identity(const DimSpec &dim) {
    return rep_of(dim, 1, 0, 0, 1);
}

SymplecticRep sym_hadamard(const DimSpec &dim) {
    return rep_of(dim, 0, lab_neg(dim, 1), 1, 0);
}

SymplecticRep sym_shear(const DimSpec &dim, int l) {
    return rep_of(dim, 1, 0, l, 1);
}

SymplecticRep sym_mult(const DimSpec &dim, int lambda) {
    if (!lab_is_unit(dim, lambda)) throw Error(ErrorCode::NonInvertibleLambda, "multiplier is not invertible");
    return rep_of(dim, lab_inv(dim, lambda), 0, 0, lambda);
}

SymplecticRep sym_mul(const SymplecticRep &x, const SymplecticRep &y) {
    const DimSpec &dim = x.dim;
    auto dot = [&](int p, int q, int r, int s) { return lab_add(dim, lab_mul(dim, p, q), lab_mul(dim, r, s)); };
    // [[a,c],[b,e]] times [[a',c'],[b',e']]
    return rep_of(dim, dot(x.a, y.a, x.c, y.b), dot(x.b, y.a, x.e, y.b), dot(x.a, y.c, x.c, y.e),
                  dot(x.b, y.c, x.e, y.e));
}

SymplecticRep sym_inv(const SymplecticRep &x) {
    const DimSpec &dim = x.dim;
    int det = sym_det(x);
    if (!lab_is_unit(dim, det)) throw Error(ErrorCode::ZeroInverse, "symplectic matrix is singular");
    int di = lab_inv(dim, det);
    return rep_of(dim, lab_mul(dim, di, x.e), lab_mul(dim, di, lab_neg(dim, x.b)), lab_mul(dim, di, lab_neg(dim, x.c)),
                  lab_mul(dim, di, x.a));
}

int sym_det(const SymplecticRep &x) {
    return lab_sub(x.dim, lab_mul(x.dim, x.a, x.e), lab_mul(x.dim, x.b, x.c));
}

std::vector<SymplecticRep> all_symplectic(const DimSpec &dim) {
    std::vector<SymplecticRep> out;
    const int d = dim.d;
    for (int a = 0; a < d; a++)
        for (int b = 0; b < d; b++)
            for (int c = 0; c < d; c++)
                for (int e = 0; e < d; e++) {
                    SymplecticRep r = rep_of(dim, a, b, c, e);
                    if (sym_det(r) == 1) out.push_back(r);
                }
    return out;
}

Mat realize(const GenWord &word, const DimSpec &dim, const Mat &gi) {
    Mat r = Mat::Identity(dim.d, dim.d);
    for (const auto &f : word) {
        switch (f.kind) {
        case GenKind::Intrinsic:
            if (gi.rows() != dim.d) throw Error(ErrorCode::DimensionMismatch, "word needs the intrinsic gate");
            r = r * gi;
            break;
        case GenKind::IntrinsicInverse:
            if (gi.rows() != dim.d) throw Error(ErrorCode::DimensionMismatch, "word needs the intrinsic gate");
            r = r * gi.adjoint();
            break;
        case GenKind::Shear:
            r = r * shear_gate(dim, f.param);
            break;
        case GenKind::Hadamard:
            r = r * hadamard(dim);
            break;
        case GenKind::Mult:
            r = r * mult_gate(dim, f.param);
            break;
        }
    }
    return r;
}

SymplecticRep word_symplectic(const GenWord &word, const DimSpec &dim, const std::optional<SymplecticRep> &gi) {
    SymplecticRep r = sym_identity(dim);
    for (const auto &f : word) {
        switch (f.kind) {
        case GenKind::Intrinsic:
        case GenKind::IntrinsicInverse:
            if (!gi) throw Error(ErrorCode::InvalidArgument, "word needs the intrinsic symplectic matrix");
            r = sym_mul(r, f.kind == GenKind::Intrinsic ? *gi : sym_inv(*gi));
            break;
        case GenKind::Shear:
            r = sym_mul(r, sym_shear(dim, f.param));
            break;
        case GenKind::Hadamard:
            r = sym_mul(r, sym_hadamard(dim));
            break;
        case GenKind::Mult:
            r = sym_mul(r, sym_mult(dim, f.param));
            break;
        }
    }
    return r;
}

std::string word_to_string(const GenWord &word) {
    std::ostringstream os;
    for (size_t k = 0; k < word.size(); k++) {
        if (k) os << ' ';
        switch (word[k].kind) {
        case GenKind::Intrinsic: os << "G"; break;
        case GenKind::IntrinsicInverse: os << "G^-1"; break;
        case GenKind::Shear: os << "S(" << word[k].param << ")"; break;
        case GenKind::Hadamard: os << "H"; break;
        case GenKind::Mult: os << "M(" << word[k].param << ")"; break;
        }
    }
    return os.str();
}

GenWord hadamard_from_intrinsic(const CliffordCert &gi_cert) {
    const DimSpec &dim = gi_cert.dim;
    UniversalityWitness w = universality_check(gi_cert);
    if (!w.universal) throw Error(ErrorCode::UniversalityViolated, "intrinsic gate keeps the Z basis");
    int binv = lab_inv(dim, w.b);
    int ab = lab_mul(dim, w.a, binv);
    return {{GenKind::Shear, lab_sub(dim, 1, ab)},
            {GenKind::Intrinsic, 0},
            {GenKind::Shear, lab_mul(dim, binv, binv)},
            {GenKind::IntrinsicInverse, 0},
            {GenKind::Shear, lab_add(dim, ab, 1)}};
}

GenWord mult_gate_decomposition(const DimSpec &dim, int lambda) {
    if (lambda < 0 || lambda >= dim.d || !lab_is_unit(dim, lambda)) {
        throw Error(ErrorCode::NonInvertibleLambda, "multiplier is not invertible");
    }
    int li = lab_inv(dim, lambda);
    return {{GenKind::Hadamard, 0}, {GenKind::Shear, lambda}, {GenKind::Hadamard, 0},
            {GenKind::Shear, li},   {GenKind::Hadamard, 0},   {GenKind::Shear, lambda}};
}

std::pair<SymplecticRep, int> map_pauli_to_Z(const DimSpec &dim, int m, int n) {
    if (m == 0 && n == 0) throw Error(ErrorCode::InvalidArgument, "(0, 0) has no Z image");
    if (dim.is_field()) {
        if (m != 0) return {rep_of(dim, lab_inv(dim, m), lab_neg(dim, n), 0, m), 1};
        return {rep_of(dim, 0, lab_neg(dim, n), lab_inv(dim, n), 0), 1};
    }
    // Bezout over the integers: g = u m + v n.
    long long r0 = m, r1 = n, u0 = 1, u1 = 0, v0 = 0, v1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = u0 - q * u1;
        u0 = u1;
        u1 = t;
        t = v0 - q * v1;
        v0 = v1;
        v1 = t;
    }
    long long g = r0;
    int mp = (int)(m / g), np = (int)(n / g);
    return {rep_of(dim, pmod(u0, dim.d), lab_neg(dim, lab_int(dim, np)), pmod(v0, dim.d), lab_int(dim, mp)), (int)g};
}

GenWord synthesis_word(const SymplecticRep &rep) {
    const DimSpec &dim = rep.dim;
    if (sym_det(rep) != 1) throw Error(ErrorCode::InvalidArgument, "symplectic matrix must have determinant 1");
    std::vector<GenFactor> gens{{GenKind::Hadamard, 0}};
    for (int l = 1; l < dim.d; l++) gens.push_back({GenKind::Shear, l});
    std::map<int, std::pair<int, int>> parent;  // key -> (parent key, generator index)
    std::map<int, SymplecticRep> node;
    SymplecticRep id = sym_identity(dim);
    int target = key_of(rep);
    parent[key_of(id)] = {-1, -1};
    node[key_of(id)] = id;
    std::queue<int> q;
    q.push(key_of(id));
    while (!q.empty() && !parent.count(target)) {
        int k = q.front();
        q.pop();
        for (size_t g = 0; g < gens.size(); g++) {
            SymplecticRep nx = sym_mul(node[k], word_symplectic({gens[g]}, dim));
            int nk = key_of(nx);
            if (parent.count(nk)) continue;
            parent[nk] = {k, (int)g};
            node[nk] = nx;
            q.push(nk);
        }
    }
    if (!parent.count(target)) throw Error(ErrorCode::InvalidArgument, "symplectic matrix not reachable");
    GenWord w;
    for (int k = target; parent[k].first >= 0; k = parent[k].first) w.insert(w.begin(), gens[parent[k].second]);
    return w;
}

Mat synthesize(const SymplecticRep &rep) {
    return realize(synthesis_word(rep), rep.dim);
}

}  // namespace qmbqc
