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

#include "qmbqc/compiler.hpp"

#include <cmath>
#include <future>
#include <map>
#include <queue>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qmbqc/gates.hpp"
#include "qmbqc/sim.hpp"

namespace qmbqc {

namespace {

double wrap(double a) {
    a = std::remainder(a, 2 * M_PI);
    if (a <= -M_PI) a += 2 * M_PI;
    return a;
}

std::vector<double> normalized(std::vector<double> ph) {
    double p0 = ph.empty() ? 0 : ph[0];
    for (auto &v : ph) v = wrap(v - p0);
    return ph;
}

Mat word_matrix(const DimSpec &dim, int z, int x) {
    return pauli_Z(dim, z) * pauli_X(dim, x);
}

void require_prime_power(const DimSpec &dim, ErrorCode code) {
    if (!dim.is_field() && !is_prime(dim.d)) {
        throw Error(code, "composite integer-ring dimension " + std::to_string(dim.d));
    }
}

Eigen::VectorXd realvec(const Mat &m) {
    const Eigen::Index n = m.size();
    Eigen::VectorXd v(2 * n);
    for (Eigen::Index i = 0; i < n; i++) {
        v(i) = m.data()[i].real();
        v(n + i) = m.data()[i].imag();
    }
    return v;
}

Eigen::MatrixXd design(const HermitianBasis &basis) {
    const int d = basis.dim.d;
    Eigen::MatrixXd a(2 * d * d, basis.elements.size());
    for (size_t k = 0; k < basis.elements.size(); k++) a.col(k) = realvec(basis.elements[k].m);
    return a;
}

// conjugation images up to phase, the Clifford modulo Paulis
std::string signature(const Mat &v, const DimSpec &dim) {
    std::string s;
    for (const auto &g : pauli_generators(dim, 1)) {
        auto img = match_pauli(v * matrix_of_pauli(g).m * v.adjoint(), dim, 1);
        if (!img) return "";
        s += std::to_string(img->z[0]) + "," + std::to_string(img->x[0]) + ";";
    }
    return s;
}

int intrinsic_pauli_order(const IntrinsicGate &gi) {
    if (gi.pauli_order) return *gi.pauli_order;
    if (gi.cert && gi.cert->pauli_order > 0) return gi.cert->pauli_order;
    return pauli_order(gi.matrix, gi.dim);
}

void require_universal(const IntrinsicGate &gi) {
    if (!gi.unitary || !gi.cert) throw Error(ErrorCode::NotClifford, "intrinsic gate is not a certified Clifford");
    if (!universality_check(*gi.cert).universal) {
        throw Error(ErrorCode::UniversalityViolated, "intrinsic gate keeps the Z basis");
    }
}

MeasurementPattern empty_pattern(const IntrinsicGate &gi) {
    MeasurementPattern p;
    p.dim = gi.dim;
    p.intrinsic = gi;
    p.frame = identity_word(gi.dim, 1);
    return p;
}

}  // namespace

Mat pattern_unitary(const MeasurementPattern &pattern) {
    Mat v = Mat::Identity(pattern.dim.d, pattern.dim.d);
    for (const auto &s : pattern.steps) v = pattern.intrinsic.matrix * diag_phases(s.phases) * v;
    return v;
}

double pattern_residual(const MeasurementPattern &pattern, const Mat &u) {
    return trace_residual(pattern_unitary(pattern), matrix_of_pauli(pattern.frame).m * u);
}

std::vector<PauliWord> mub_paulis(const DimSpec &dim) {
    require_prime_power(dim, ErrorCode::WrongFormalism);
    std::vector<PauliWord> r{make_word(dim, {1}, {0})};
    PauliWord x1 = make_word(dim, {0}, {1});
    for (int a = 0; a < dim.d; a++) r.push_back(normal_form(x1, make_word(dim, {a}, {0})));
    return r;
}

Mat pauli_eigenbasis(const PauliWord &w) {
    const DimSpec &dim = w.dim;
    const int d = dim.d;
    if (w.z.size() != 1) throw Error(ErrorCode::DimensionMismatch, "single-qudit word expected");
    if (w.x[0] == 0) return Mat::Identity(d, d);
    // A generic Hermitian combination of the whole class splits every joint eigenspace.
    for (int attempt = 0; attempt < 8; attempt++) {
        Mat h = Mat::Zero(d, d);
        for (int l = 1; l < d; l++) {
            cplx c(std::cos(0.7 * l + attempt) + 1.3 * l, std::sin(1.1 * l * (attempt + 1)));
            Mat p = word_matrix(dim, lab_mul(dim, l, w.z[0]), lab_mul(dim, l, w.x[0]));
            h += c * p + std::conj(c) * p.adjoint();
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        const auto &ev = es.eigenvalues();
        double gap = 1e9;
        for (int k = 1; k < d; k++) gap = std::min(gap, ev(k) - ev(k - 1));
        if (gap < 1e-6) continue;
        Mat v = es.eigenvectors();
        for (int k = 0; k < d; k++) {
            Eigen::Index i = 0;
            v.col(k).cwiseAbs().maxCoeff(&i);
            v.col(k) *= std::conj(v(i, k)) / std::abs(v(i, k));
        }
        return v;
    }
    throw Error(ErrorCode::InvalidArgument, "could not split the eigenspaces");
}

HermitianBasis hermitian_basis(const DimSpec &dim, HermitianVariant variant) {
    HermitianBasis basis;
    basis.dim = dim;
    basis.variant = variant;
    const int d = dim.d;
    if (variant == HermitianVariant::Mub) {
        auto ps = mub_paulis(dim);
        for (size_t i = 0; i < ps.size(); i++) {
            Mat v = pauli_eigenbasis(ps[i]);
            // each basis sums to I, so one projector per non-Z basis is redundant
            int count = i == 0 ? d : d - 1;
            for (int k = 0; k < count; k++) {
                HermitianElement e;
                e.m = v.col(k) * v.col(k).adjoint();
                e.pauli = ps[i];
                e.k = k;
                basis.elements.push_back(e);
            }
        }
        return basis;
    }
    Eigen::MatrixXd acc(2 * d * d, 0);
    int rank = 0;
    for (int a = 0; a < d && rank < d * d; a++) {
        for (int b = 0; b < d && rank < d * d; b++) {
            Mat w = word_matrix(dim, a, b);
            if (!dim.is_field()) w *= std::polar(1.0, -M_PI * a * b / d);
            for (int part = 0; part < 2 && rank < d * d; part++) {
                cplx c = part == 0 ? cplx(1, 0) : cplx(0, 1);
                Mat n = c * w + std::conj(c) * w.adjoint();
                Eigen::MatrixXd trial(acc.rows(), acc.cols() + 1);
                trial << acc, realvec(n);
                Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(trial);
                qr.setThreshold(1e-9);
                if (qr.rank() <= rank) continue;
                acc = trial;
                rank = (int)qr.rank();
                basis.elements.push_back({n, std::nullopt, 0, a, b, part});
            }
        }
    }
    return basis;
}

int gram_rank(const HermitianBasis &basis) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design(basis));
    qr.setThreshold(1e-9);
    return (int)qr.rank();
}

std::vector<double> expand_hermitian(const Mat &h, const HermitianBasis &basis) {
    const int d = basis.dim.d;
    if (h.rows() != d || h.cols() != d) throw Error(ErrorCode::DimensionMismatch, "operator size does not match basis");
    if (!is_hermitian(h)) throw Error(ErrorCode::NonHermitian, "operator is not Hermitian");
    Mat hs = 0.5 * (h + h.adjoint());
    Eigen::MatrixXd a = design(basis);
    Eigen::VectorXd y = realvec(hs);
    Eigen::VectorXd alpha = a.colPivHouseholderQr().solve(y);
    if ((a * alpha - y).cwiseAbs().maxCoeff() > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "basis does not span the operator");
    }
    return std::vector<double>(alpha.data(), alpha.data() + alpha.size());
}

namespace {

// Coordinate ascent on |tr(U^dag V)|; each block update is the exact maximizer.
double als(const Mat &u, const Mat &g, std::vector<std::vector<double>> &phi, int max_sweeps) {
    const int L = (int)phi.size();
    const int d = (int)u.rows();
    Mat ud = u.adjoint();
    std::vector<Mat> after(L);
    double prev = 2, res = 1;
    for (int sweep = 0; sweep < max_sweeps; sweep++) {
        after[L - 1] = g;
        for (int j = L - 2; j >= 0; j--) after[j] = after[j + 1] * diag_phases(phi[j + 1]) * g;
        Mat before = Mat::Identity(d, d);
        for (int j = 0; j < L; j++) {
            Mat m = before * ud * after[j];
            for (int k = 0; k < d; k++) {
                if (std::abs(m(k, k)) > 1e-300) phi[j][k] = -std::arg(m(k, k));
            }
            before = g * diag_phases(phi[j]) * before;
        }
        res = trace_residual(before, u);
        if (res < 1e-14 || prev - res < 1e-16) break;
        prev = res;
    }
    return res;
}

}  // namespace

MeasurementPattern compile_unitary(const Mat &u, const IntrinsicGate &gi, const CompileOptions &opt) {
    const DimSpec &dim = gi.dim;
    const int d = dim.d;
    require_prime_power(dim, ErrorCode::UnsupportedFormalism);
    if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::DimensionMismatch, "target size does not match");
    if (!is_unitary(u)) throw Error(ErrorCode::NonUnitary, "target is not unitary");
    require_universal(gi);
    MeasurementPattern pat = empty_pattern(gi);
    const Mat &g = gi.matrix;

    // one step suffices when G^dag U is diagonal
    Mat q = g.adjoint() * u;
    if (max_abs(q - Mat(q.diagonal().asDiagonal())) < 1e-12) {
        std::vector<double> ph(d);
        for (int k = 0; k < d; k++) ph[k] = std::arg(q(k, k));
        pat.steps.push_back({normalized(ph), true});
        return pat;
    }

    const int L = d * intrinsic_pauli_order(gi);
    std::vector<double> seed0(d, 0.0);
    {
        auto basis = hermitian_basis(dim, HermitianVariant::Mub);
        auto alpha = expand_hermitian(unitary_log(u), basis);
        for (int k = 0; k < d; k++) seed0[k] = alpha[k];
    }
    std::vector<std::vector<double>> best;
    double best_res = 2;
    for (int r = 0; r <= opt.restarts; r++) {
        std::vector<std::vector<double>> phi(L, std::vector<double>(d, 0.0));
        if (r == 0) {
            phi[0] = seed0;
        } else {
            Rng rng(opt.seed * 7919 + r);
            std::uniform_real_distribution<double> ang(-M_PI, M_PI);
            for (auto &s : phi)
                for (auto &v : s) v = ang(rng);
        }
        double res = als(u, g, phi, opt.max_sweeps);
        if (res < best_res) {
            best_res = res;
            best = phi;
        }
        if (best_res < 1e-13) break;
    }
    if (!(best_res < opt.threshold)) {
        throw Error(ErrorCode::CompilationDiverged, "residual " + std::to_string(best_res) + " after restarts");
    }
    for (auto &s : best) {
        auto ph = normalized(s);
        bool trivial = true;
        for (double v : ph) trivial = trivial && std::abs(v) < 1e-12;
        pat.steps.push_back({ph, !trivial});
    }
    return pat;
}

std::vector<MeasurementPattern> compile_unitaries(const std::vector<Mat> &targets, const IntrinsicGate &gi,
                                                  const CompileOptions &opt) {
    std::vector<std::future<MeasurementPattern>> jobs;
    for (const auto &t : targets) {
        jobs.push_back(std::async(std::launch::async, [&t, &gi, &opt] { return compile_unitary(t, gi, opt); }));
    }
    std::vector<MeasurementPattern> out;
    for (auto &j : jobs) out.push_back(j.get());
    return out;
}

namespace {

GenWord expand_word(const GenWord &w, const CliffordCert &cert) {
    GenWord out;
    for (const auto &f : w) {
        if (f.kind == GenKind::Hadamard) {
            for (const auto &h : hadamard_from_intrinsic(cert)) out.push_back(h);
        } else if (f.kind == GenKind::Mult) {
            for (const auto &h : expand_word(mult_gate_decomposition(cert.dim, f.param), cert)) out.push_back(h);
        } else {
            out.push_back(f);
        }
    }
    return out;
}

bool proportional_identity(const Mat &m) {
    return equal_up_to_phase(m, Mat::Identity(m.rows(), m.cols()), 1e-10);
}

void pad_transport(MeasurementPattern &pat, const Mat &pending, int op) {
    pat.steps.push_back({normalized(phases_of_diag(pending)), false});
    for (int i = 1; i < op; i++) pat.steps.push_back({std::vector<double>(pat.dim.d, 0.0), false});
}

std::optional<MeasurementPattern> lower_word(const Mat &c, const IntrinsicGate &gi) {
    const DimSpec &dim = gi.dim;
    const CliffordCert &cert = *gi.cert;
    auto ct = conjugation_table(c, dim);
    if (!ct.cert.rep || cert.order <= 1) return std::nullopt;
    GenWord word = expand_word(synthesis_word(*ct.cert.rep), cert);
    MeasurementPattern pat = empty_pattern(gi);
    Mat pending = Mat::Identity(dim.d, dim.d);
    std::vector<double> zero(dim.d, 0.0);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (it->kind) {
        case GenKind::Shear:
            pending = shear_gate(dim, it->param) * pending;
            break;
        case GenKind::Intrinsic:
            pat.steps.push_back({normalized(phases_of_diag(pending)), false});
            pending = Mat::Identity(dim.d, dim.d);
            break;
        case GenKind::IntrinsicInverse:
            // G^{-1} is G^{order-1} up to phase
            pat.steps.push_back({normalized(phases_of_diag(pending)), false});
            for (int i = 2; i < cert.order; i++) pat.steps.push_back({zero, false});
            pending = Mat::Identity(dim.d, dim.d);
            break;
        default:
            return std::nullopt;
        }
    }
    if (!proportional_identity(pending) || pat.steps.empty()) pad_transport(pat, pending, intrinsic_pauli_order(gi));
    auto f = pauli_quotient(pattern_unitary(pat), c, dim);
    if (!f) return std::nullopt;
    pat.frame = *f;
    return pat;
}

std::vector<Mat> diagonal_cliffords(const DimSpec &dim) {
    // representatives modulo Paulis, over phases that are powers of the phase root
    const int d = dim.d, den = dim.phase_den();
    std::map<std::string, Mat> reps;
    std::vector<int> e(d, 0);
    long long total = 1;
    for (int k = 1; k < d; k++) total *= den;
    for (long long idx = 0; idx < total; idx++) {
        long long t = idx;
        Mat m = Mat::Identity(d, d);
        for (int k = 1; k < d; k++) {
            m(k, k) = root_of_unity((int)(t % den), den);
            t /= den;
        }
        std::string s = signature(m, dim);
        if (!s.empty() && !reps.count(s)) reps.emplace(s, m);
    }
    std::vector<Mat> out;
    for (auto &kv : reps) out.push_back(kv.second);
    return out;
}

std::optional<MeasurementPattern> search_steps(const Mat &c, const IntrinsicGate &gi) {
    const DimSpec &dim = gi.dim;
    std::string target = signature(c, dim);
    if (target.empty()) return std::nullopt;
    std::vector<Mat> diags = diagonal_cliffords(dim);
    struct Node {
        Mat v;
        std::vector<int> path;
    };
    std::map<std::string, bool> seen;
    std::queue<Node> q;
    q.push({Mat::Identity(dim.d, dim.d), {}});
    seen[signature(q.front().v, dim)] = true;
    const size_t cap = 200000;
    while (!q.empty() && seen.size() < cap) {
        Node n = q.front();
        q.pop();
        for (size_t i = 0; i < diags.size(); i++) {
            Mat v = gi.matrix * diags[i] * n.v;
            std::string s = signature(v, dim);
            if (s.empty() || seen.count(s)) continue;
            seen[s] = true;
            std::vector<int> path = n.path;
            path.push_back((int)i);
            if (s == target) {
                MeasurementPattern pat = empty_pattern(gi);
                for (int k : path) pat.steps.push_back({normalized(phases_of_diag(diags[k])), false});
                auto f = pauli_quotient(pattern_unitary(pat), c, dim);
                if (!f) return std::nullopt;
                pat.frame = *f;
                return pat;
            }
            q.push({v, path});
        }
    }
    return std::nullopt;
}

}  // namespace

MeasurementPattern compile_clifford(const Mat &c, const IntrinsicGate &gi) {
    const DimSpec &dim = gi.dim;
    if (c.rows() != dim.d || c.cols() != dim.d) throw Error(ErrorCode::DimensionMismatch, "target size does not match");
    auto ct = conjugation_table(c, dim);
    if (!ct.clifford) throw Error(ErrorCode::NotClifford, "target is not Clifford");
    require_universal(gi);
    Mat id = Mat::Identity(dim.d, dim.d);
    if (pauli_quotient(c, id, dim)) {
        MeasurementPattern pat = transport_pattern(gi);
        auto q = pauli_quotient(pattern_unitary(pat), c, dim);
        if (q) {
            pat.frame = *q;
            return pat;
        }
    }
    if (auto p = lower_word(c, gi)) return *p;
    if (auto p = search_steps(c, gi)) return *p;
    throw Error(ErrorCode::NotClifford, "target is outside the group generated by the intrinsic gate");
}

MeasurementPattern transport_pattern(const IntrinsicGate &gi) {
    MeasurementPattern pat = empty_pattern(gi);
    int op = intrinsic_pauli_order(gi);
    for (int i = 0; i < op; i++) pat.steps.push_back({std::vector<double>(gi.dim.d, 0.0), false});
    auto f = pauli_quotient(pattern_unitary(pat), Mat::Identity(gi.dim.d, gi.dim.d), gi.dim);
    if (!f) throw Error(ErrorCode::NotClifford, "intrinsic power is not a Pauli");
    pat.frame = *f;
    return pat;
}

}  // namespace qmbqc
