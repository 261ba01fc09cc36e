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
#include <random>

#include "doctest.h"
#include "qmbqc/gates.hpp"
#include "qmbqc/pauli.hpp"
#include "qmbqc/sim.hpp"

using namespace qmbqc;

namespace {

Vec random_state(int n, Rng &rng) {
    std::normal_distribution<double> g;
    Vec v(n);
    for (int i = 0; i < n; i++) v(i) = cplx(g(rng), g(rng));
    return v / v.norm();
}

// Light-shift gate: phase e^{i theta} exactly when j != k.
Mat light_shift(int d, double theta) {
    Mat g = Mat::Identity(d * d, d * d);
    for (int j = 0; j < d; j++)
        for (int k = 0; k < d; k++)
            if (j != k) g(j * d + k, j * d + k) = std::polar(1.0, theta);
    return g;
}

}  // namespace

TEST_CASE("gate application examples") {
    DimSpec d2 = make_ring(2), d3 = make_ring(3);
    StateVector s = product_state(d2, {Vec::Unit(2, 0), plus_state(d2)});
    StateVector t = apply(s, cz_gate(d2), {0, 1});
    CHECK((t.amps - s.amps).norm() < 1e-12);

    StateVector pp = product_state(d3, {plus_state(d3), plus_state(d3)});
    StateVector c = apply(pp, cz_gate(d3), {0, 1});
    for (int j = 0; j < 3; j++)
        for (int k = 0; k < 3; k++) CHECK(std::abs(c.amps(j * 3 + k) - std::polar(1.0 / 3, 2 * M_PI * j * k / 3)) < 1e-12);

    StateVector z = apply(make_state(d3, Vec::Unit(3, 0)), hadamard(d3), {0});
    for (int k = 0; k < 3; k++) CHECK(std::abs(z.amps(k) - 1 / std::sqrt(3.0)) < 1e-12);

    Mat bad = Mat::Identity(3, 3);
    bad(0, 0) = 2;
    try {
        apply(z, bad, {0});
        FAIL("non-unitary accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::NonUnitary);
    }
    try {
        apply(z, hadamard(d3), {1});
        FAIL("site out of range accepted");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::SiteOutOfRange);
    }
}

TEST_CASE("apply then inverse restores the state") {
    Rng rng(7);
    DimSpec d3 = make_ring(3);
    StateVector s = make_state(d3, random_state(27, rng));
    Mat u = cz_gate(d3) * kron(hadamard(d3), phase_gate(d3));
    StateVector t = apply(apply(s, u, {2, 0}), u.adjoint(), {2, 0});
    CHECK((t.amps - s.amps).norm() < 1e-10);
}

TEST_CASE("X measurement teleports through CZ") {
    Rng rng(11);
    for (int d : {2, 3, 5}) {
        DimSpec dim = make_ring(d);
        Vec psi = random_state(d, rng);
        StateVector s = apply(product_state(dim, {psi, plus_state(dim)}), cz_gate(dim), {0, 1});
        MeasurementBasis xb = make_basis(d, x_basis(dim), "X");
        CHECK(transport_valid(xb));
        for (int j = 0; j < d; j++) {
            MeasureResult r = measure(s, xb, 0, nullptr, j);
            CHECK(r.probability == doctest::Approx(1.0 / d));
            Vec expect = hadamard(dim) * pauli_Z(dim, lab_neg(dim, j)) * psi;
            CHECK(state_fidelity(r.post.amps, expect) == doctest::Approx(1.0));
        }
    }
    DimSpec d3 = make_ring(3);
    MeasureResult r = measure(make_state(d3, Vec::Unit(3, 0)), z_basis(d3), 0, &rng);
    CHECK(r.outcome == 0);
    CHECK(r.probability == doctest::Approx(1.0));
    try {
        measure(make_state(d3, Vec::Unit(3, 0)), z_basis(d3), 0, nullptr, 1);
        FAIL("zero-probability outcome forced");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ZeroProbabilityForced);
    }
}

TEST_CASE("Bell measurement outcomes") {
    Rng rng(5);
    DimSpec d3 = make_ring(3);
    Vec psi = random_state(3, rng);
    Vec phi = Vec::Zero(9);
    for (int k = 0; k < 3; k++) phi(k * 3 + k) = 1 / std::sqrt(3.0);
    StateVector s = tensor(make_state(d3, psi), make_state(d3, phi));
    MeasurementBasis bb = bell_basis(d3);
    for (int sx = 0; sx < 3; sx++)
        for (int tz = 0; tz < 3; tz++) {
            MeasureResult r = measure(s, bb, {0, 1}, nullptr, sx * 3 + tz);
            CHECK(r.probability == doctest::Approx(1.0 / 9));
            // direct contraction: <Phi_st|_{01} psi_0 Phi_{12} = (1/d) X^s Z^{-t} psi
            Vec expect = Vec::Zero(3);
            for (int a = 0; a < 3; a++) expect((a + sx) % 3) += std::polar(1.0, -2 * M_PI * tz * a / 3) * psi(a);
            CHECK(state_fidelity(r.post.amps, expect) == doctest::Approx(1.0));
        }
}

TEST_CASE("reduced density of light-shift states") {
    DimSpec d3 = make_ring(3);
    StateVector pp = product_state(d3, {plus_state(d3), plus_state(d3)});
    Mat rho = reduced_density(apply(pp, light_shift(3, 2 * M_PI / 3), {0, 1}), {0}).m;
    CHECK(max_abs(rho - Mat::Identity(3, 3) / 3.0) < 1e-12);

    StateVector g = apply(pp, light_shift(3, M_PI / 2), {0, 1});
    Mat r2 = reduced_density(g, {0}).m;
    // 9-amplitude partial trace by hand
    Mat oracle = Mat::Zero(3, 3);
    for (int j = 0; j < 3; j++)
        for (int k = 0; k < 3; k++)
            for (int a = 0; a < 3; a++) oracle(j, k) += g.amps(j * 3 + a) * std::conj(g.amps(k * 3 + a));
    CHECK(max_abs(r2 - oracle) < 1e-12);
    CHECK(std::abs(3.0 * r2(0, 1) - 1.0 / 3) < 1e-12);
    CHECK(is_hermitian(r2));
    CHECK(std::abs(r2.trace() - 1.0) < 1e-12);
    CHECK_FALSE(is_max_entangled(g, {0}));

    Vec phi = Vec::Zero(9);
    for (int k = 0; k < 3; k++) phi(k * 3 + k) = 1 / std::sqrt(3.0);
    CHECK(max_abs(reduced_density(make_state(d3, phi), {1}).m - Mat::Identity(3, 3) / 3.0) < 1e-12);
}

TEST_CASE("Schmidt decompositions") {
    DimSpec d3 = make_ring(3);
    Vec phi = Vec::Zero(9);
    for (int k = 0; k < 3; k++) phi(k * 3 + k) = 1 / std::sqrt(3.0);
    StateVector bell = make_state(d3, phi);
    SchmidtResult sb = schmidt(bell, {0});
    for (int k = 0; k < 3; k++) CHECK(sb.coefficients(k) == doctest::Approx(1 / std::sqrt(3.0)));
    CHECK(is_max_entangled(bell, {0}));

    Rng rng(3);
    StateVector prod = product_state(d3, {random_state(3, rng), random_state(3, rng)});
    SchmidtResult sp = schmidt(prod, {0});
    CHECK(sp.coefficients(0) == doctest::Approx(1.0));
    CHECK(sp.coefficients(1) < 1e-9);
    CHECK_FALSE(is_max_entangled(prod, {0}));

    // reconstruction from the decomposition
    StateVector r = make_state(d3, random_state(9, rng));
    SchmidtResult sr = schmidt(r, {0});
    Vec rec = Vec::Zero(9);
    for (int k = 0; k < 3; k++) rec += sr.coefficients(k) * kron(sr.left.col(k), sr.right.col(k));
    CHECK((rec - r.amps).norm() < 1e-10);
    for (int k = 1; k < 3; k++) CHECK(sr.coefficients(k) <= sr.coefficients(k - 1));

    // CZ|+>|+>: right basis spans {H|k>}
    StateVector c = apply(product_state(d3, {plus_state(d3), plus_state(d3)}), cz_gate(d3), {0, 1});
    SchmidtResult sc = schmidt(c, {0});
    Mat h = hadamard(d3);
    Mat overlap = h.adjoint() * sc.right;
    CHECK(max_abs(overlap.adjoint() * overlap - Mat::Identity(3, 3)) < 1e-9);
}

TEST_CASE("measurement statistics follow the Born rule") {
    Rng rng(2024);
    DimSpec d3 = make_ring(3);
    StateVector s = make_state(d3, random_state(3, rng));
    MeasurementBasis xb = make_basis(3, x_basis(d3), "X");
    auto probs = outcome_probabilities(s, xb, {0});
    const int trials = 20000;
    std::vector<int> count(3, 0);
    for (int t = 0; t < trials; t++) count[measure(s, xb, 0, &rng).outcome]++;
    for (int k = 0; k < 3; k++) {
        double sigma = std::sqrt(trials * probs[k] * (1 - probs[k]));
        CHECK(std::abs(count[k] - trials * probs[k]) < 3 * sigma + 1);
    }
}
