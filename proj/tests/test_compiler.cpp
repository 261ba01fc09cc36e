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

#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "qmbqc/compiler.hpp"
#include "qmbqc/gates.hpp"
#include "qmbqc/sim.hpp"

using namespace qmbqc;

namespace {

IntrinsicGate gate_of(const DimSpec &dim, const std::string &name) {
    if (name == "cz") return intrinsic_of(named_cz(dim));
    if (name == "cx") return intrinsic_of(named_cx(dim));
    return intrinsic_of(named_light_shift(dim, light_shift_angle(dim.d)));
}

// product computed step by step, independent of pattern_unitary
Mat replay(const MeasurementPattern &p) {
    Mat v = Mat::Identity(p.dim.d, p.dim.d);
    for (const auto &s : p.steps) {
        Mat d = Mat::Zero(p.dim.d, p.dim.d);
        for (int k = 0; k < p.dim.d; k++) d(k, k) = std::exp(cplx(0, s.phases[k]));
        v = p.intrinsic.matrix * d * v;
    }
    return v;
}

bool diagonal_clifford(const DimSpec &dim, const std::vector<double> &ph) {
    return conjugation_table(diag_phases(ph), dim).clifford;
}

}  // namespace

TEST_CASE("mub paulis") {
    CHECK(mub_paulis(make_ring(2)).size() == 3);
    CHECK(mub_paulis(make_ring(3)).size() == 4);
    auto ws = mub_paulis(make_ring(3));
    CHECK(ws[0] == make_word(make_ring(3), {1}, {0}));
    CHECK(ws[1].x[0] == 1);
    CHECK(ws[1].z[0] == 0);
    CHECK_THROWS_AS(mub_paulis(make_ring(6)), Error);
}

TEST_CASE("mub eigenbases are unbiased") {
    for (DimSpec dim : {make_ring(2), make_ring(3), make_ring(5), make_field(2, 2), make_field(3, 2)}) {
        const int d = dim.d;
        auto ws = mub_paulis(dim);
        CHECK(ws.size() == (size_t)d + 1);
        std::vector<Mat> bases;
        for (const auto &w : ws) {
            Mat v = pauli_eigenbasis(w);
            CHECK(is_unitary(v, 1e-10));
            // every column is an eigenvector of the source word
            Mat pw = matrix_of_pauli(w).m;
            for (int k = 0; k < d; k++) {
                Vec c = v.col(k);
                Vec img = pw * c;
                cplx lam = c.dot(img);
                CHECK((img - lam * c).norm() < 1e-10);
            }
            bases.push_back(v);
        }
        for (size_t i = 0; i < bases.size(); i++) {
            for (size_t j = i + 1; j < bases.size(); j++) {
                Mat ov = bases[i].adjoint() * bases[j];
                CHECK((ov.cwiseAbs().array() - 1.0 / std::sqrt((double)d)).abs().maxCoeff() < 1e-10);
            }
        }
    }
}

TEST_CASE("hermitian bases") {
    auto b2 = hermitian_basis(make_ring(2), HermitianVariant::Mub);
    CHECK(b2.elements.size() == 4);
    CHECK(gram_rank(b2) == 4);
    auto w3 = hermitian_basis(make_ring(3), HermitianVariant::Weyl);
    CHECK(w3.elements.size() == 9);
    CHECK(gram_rank(w3) == 9);
    auto f4 = hermitian_basis(make_field(2, 2), HermitianVariant::Mub);
    CHECK(f4.elements.size() == 16);
    CHECK(gram_rank(f4) == 16);
    // one full basis, four truncated
    std::map<std::string, int> per;
    for (const auto &e : f4.elements) per[std::to_string(e.pauli->z[0]) + "/" + std::to_string(e.pauli->x[0])]++;
    CHECK(per.size() == 5);
    int full = 0, trunc = 0;
    for (auto &kv : per) (kv.second == 4 ? full : trunc) += 1;
    CHECK(full == 1);
    CHECK(trunc == 4);
    auto w6 = hermitian_basis(make_ring(6), HermitianVariant::Weyl);
    CHECK(gram_rank(w6) == 36);
    CHECK_THROWS_AS(hermitian_basis(make_ring(6), HermitianVariant::Mub), Error);
    for (const auto &e : w6.elements) CHECK(is_hermitian(e.m, 1e-12));
}

TEST_CASE("expand hermitian") {
    Rng rng(3);
    std::normal_distribution<double> g;
    for (DimSpec dim : {make_ring(2), make_ring(3), make_field(2, 2)}) {
        const int d = dim.d;
        for (auto var : {HermitianVariant::Mub, HermitianVariant::Weyl}) {
            auto basis = hermitian_basis(dim, var);
            auto zero = expand_hermitian(Mat::Zero(d, d), basis);
            for (double a : zero) CHECK(std::abs(a) < 1e-14);
            Mat h(d, d);
            for (int i = 0; i < d; i++)
                for (int j = 0; j < d; j++) h(i, j) = cplx(g(rng), g(rng));
            h = h + h.adjoint().eval();
            auto alpha = expand_hermitian(h, basis);
            Mat back = Mat::Zero(d, d);
            for (size_t k = 0; k < alpha.size(); k++) back += alpha[k] * basis.elements[k].m;
            CHECK(max_abs(back - h) < 1e-10);
        }
        // diagonal operators live on the Z projectors
        auto basis = hermitian_basis(dim, HermitianVariant::Mub);
        Mat diag = Mat::Zero(d, d);
        for (int k = 0; k < d; k++) diag(k, k) = g(rng);
        auto alpha = expand_hermitian(diag, basis);
        for (int k = 0; k < d; k++) CHECK(std::abs(alpha[k] - diag(k, k).real()) < 1e-10);
        for (size_t k = d; k < alpha.size(); k++) CHECK(std::abs(alpha[k]) < 1e-10);
        Mat nh = Mat::Zero(d, d);
        nh(0, 1) = 1;
        CHECK_THROWS_AS(expand_hermitian(nh, basis), Error);
    }
}

TEST_CASE("intrinsic gate compiles to one step") {
    for (DimSpec dim : {make_ring(2), make_ring(3), make_field(2, 2)}) {
        for (std::string name : {"cz", "cx", "ls"}) {
            IntrinsicGate gi = gate_of(dim, name);
            auto p = compile_unitary(gi.matrix, gi);
            REQUIRE(p.steps.size() == 1);
            for (double v : p.steps[0].phases) CHECK(std::abs(v) < 1e-12);
        }
    }
}

TEST_CASE("qubit pattern has the four-step shape") {
    DimSpec dim = make_ring(2);
    IntrinsicGate gi = gate_of(dim, "cz");
    Rng rng(8);
    for (int t = 0; t < 10; t++) {
        Mat u = haar_unitary(2, rng);
        auto p = compile_unitary(u, gi);
        CHECK(p.steps.size() == 4);
        CHECK(trace_residual(replay(p), u) < 1e-10);
        CHECK(p.frame == identity_word(dim, 1));
    }
}

TEST_CASE("random targets compile within the length bound") {
    for (DimSpec dim : {make_ring(2), make_ring(3), make_field(2, 2)}) {
        for (std::string name : {"cz", "cx", "ls"}) {
            IntrinsicGate gi = gate_of(dim, name);
            Rng rng(40 + dim.d);
            std::vector<Mat> us;
            for (int t = 0; t < 6; t++) us.push_back(haar_unitary(dim.d, rng));
            auto ps = compile_unitaries(us, gi);
            for (size_t t = 0; t < us.size(); t++) {
                CHECK(ps[t].steps.size() <= (size_t)(dim.d * *gi.pauli_order));
                CHECK(trace_residual(replay(ps[t]), us[t]) < 1e-9);
                for (const auto &s : ps[t].steps) CHECK(s.phases.size() == (size_t)dim.d);
                // concurrent and sequential runs agree
                auto seq = compile_unitary(us[t], gi);
                CHECK(max_abs(pattern_unitary(seq) - pattern_unitary(ps[t])) < 1e-12);
            }
        }
    }
}

TEST_CASE("compile errors") {
    Rng rng(1);
    IntrinsicGate h6 = intrinsic_of(named_cz(make_ring(6)));
    try {
        compile_unitary(haar_unitary(6, rng), h6);
        FAIL("expected UnsupportedFormalism");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::UnsupportedFormalism);
    }
    DimSpec d3 = make_ring(3);
    IntrinsicGate s = intrinsic_from_matrix(d3, phase_gate(d3));
    try {
        compile_unitary(haar_unitary(3, rng), s);
        FAIL("expected UniversalityViolated");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::UniversalityViolated);
    }
    CompileOptions strict;
    strict.restarts = 0;
    strict.max_sweeps = 1;
    strict.threshold = 1e-300;
    try {
        compile_unitary(haar_unitary(3, rng), gate_of(d3, "cz"), strict);
        FAIL("expected CompilationDiverged");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::CompilationDiverged);
    }
}

TEST_CASE("transport patterns") {
    DimSpec d3 = make_ring(3);
    CHECK(transport_pattern(gate_of(d3, "cz")).steps.size() == 4);
    CHECK(transport_pattern(gate_of(d3, "ls")).steps.size() == 3);
    CHECK(transport_pattern(gate_of(make_ring(2), "cz")).steps.size() == 2);
    CHECK(transport_pattern(gate_of(make_field(2, 2), "ls")).steps.size() == 2);
    for (DimSpec dim : {make_ring(2), d3, make_field(2, 2)}) {
        for (std::string name : {"cz", "cx", "ls"}) {
            auto p = transport_pattern(gate_of(dim, name));
            CHECK(equal_up_to_phase(replay(p), matrix_of_pauli(p.frame).m, 1e-10));
        }
    }
}

TEST_CASE("clifford patterns are non-adaptive") {
    Rng rng(2);
    DimSpec d3 = make_ring(3);
    DimSpec f4 = make_field(2, 2);
    std::vector<std::pair<IntrinsicGate, Mat>> cases;
    for (DimSpec dim : {make_ring(2), d3, f4}) {
        for (std::string name : {"cz", "cx", "ls"}) {
            IntrinsicGate gi = gate_of(dim, name);
            cases.push_back({gi, phase_gate(dim)});
            cases.push_back({gi, hadamard(dim)});
            for (int l = 1; l < dim.d; l++) cases.push_back({gi, mult_gate(dim, l)});
        }
    }
    auto reps = all_symplectic(d3);
    std::uniform_int_distribution<int> pick(0, (int)reps.size() - 1), lab(0, 2);
    for (int t = 0; t < 10; t++) {
        Mat c = synthesize(reps[pick(rng)]) * pauli_Z(d3, lab(rng)) * pauli_X(d3, lab(rng));
        cases.push_back({gate_of(d3, "ls"), c});
        cases.push_back({gate_of(d3, "cz"), c});
    }
    for (auto &[gi, c] : cases) {
        auto p = compile_clifford(c, gi);
        CHECK(!p.steps.empty());
        for (const auto &s : p.steps) {
            CHECK(!s.adaptive);
            CHECK(diagonal_clifford(gi.dim, s.phases));
        }
        CHECK(equal_up_to_phase(replay(p), matrix_of_pauli(p.frame).m * c, 1e-10));
        CHECK(pattern_residual(p, c) < 1e-12);
    }
}

TEST_CASE("S is one diagonal step plus transport") {
    DimSpec d3 = make_ring(3);
    IntrinsicGate gi = gate_of(d3, "ls");
    auto p = compile_clifford(phase_gate(d3), gi);
    CHECK(p.steps.size() == 3);
    for (size_t i = 1; i < p.steps.size(); i++)
        for (double v : p.steps[i].phases) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("non-Clifford targets are rejected") {
    DimSpec d2 = make_ring(2);
    Mat t = Mat::Identity(2, 2);
    t(1, 1) = std::polar(1.0, M_PI / 4);
    CHECK_THROWS_AS(compile_clifford(t, gate_of(d2, "cz")), Error);
}
