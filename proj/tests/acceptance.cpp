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

// Runs the ten acceptance criteria and prints one line per criterion.
// Usage: acceptance [--expect-fail N]...  (exit 0 iff the failing set equals the expected set)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "qmbqc/commands.hpp"
#include "qmbqc/gates.hpp"

using namespace qmbqc;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

Vec random_state(int n, Rng &rng) {
    std::normal_distribution<double> g;
    Vec v(n);
    for (int i = 0; i < n; i++) v(i) = cplx(g(rng), g(rng));
    return v / v.norm();
}

Mat real_mat(std::initializer_list<std::initializer_list<double>> rows) {
    Mat m(rows.size(), rows.begin()->size());
    int r = 0;
    for (auto row : rows) {
        int c = 0;
        for (double x : row) m(r, c++) = x;
        r++;
    }
    return m;
}

EntanglingGateSpec family(const DimSpec &dim, const std::string &f) {
    if (f == "cz") return named_cz(dim);
    if (f == "cx") return named_cx(dim);
    return named_light_shift(dim, light_shift_angle(dim.d));
}

DimSpec table_dim(int d) {
    return d == 4 ? make_field(2, 2) : make_ring(d);
}

// 1
Outcome table_reproduction() {
    auto t0 = Clock::now();
    Outcome o;
    int rows = 0;
    for (const TableRow &r : table_rows()) {
        rows++;
        if (!r.match) {
            o.pass = false;
            o.detail += " mismatch d=" + std::to_string(r.d) + " " + r.family;
        }
    }
    CommandRequest req;
    req.command = "table";
    int rc = run_command(req).exit_code;
    double s = seconds_since(t0);
    if (rc != 0 || s >= 5) o.pass = false;
    o.detail = std::to_string(rows) + " rows, cmd_table exit " + std::to_string(rc) + ", " + fmt("%.2f s", s) + o.detail;
    return o;
}

// 2
Outcome light_shift_angles() {
    Outcome o;
    const double want[] = {M_PI / 2, 2 * M_PI / 3, M_PI};
    double worst = 0;
    for (int d = 2; d <= 4; d++) worst = std::max(worst, std::abs(light_shift_angle(d) - want[d - 2]));
    bool nrs = false;
    try {
        light_shift_angle(5);
    } catch (const Error &e) {
        nrs = e.code() == ErrorCode::NoRealSolution;
    }
    o.pass = worst < 1e-12 && nrs;
    o.detail = "max abs err " + fmt("%.1e", worst) + (nrs ? ", d=5 NoRealSolution" : ", d=5 did not raise NoRealSolution");
    return o;
}

// 3
Outcome ququart_matrices() {
    Outcome o;
    DimSpec f4 = make_field(2, 2);
    const cplx i(0, 1);
    Mat h = 0.5 * real_mat({{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -1, 1, -1}});
    Mat s = Mat::Zero(4, 4);
    s(0, 0) = 1;
    s(1, 1) = -1;
    s(2, 2) = -i;
    s(3, 3) = -i;
    struct Item {
        const char *name;
        Mat built, printed, swapped;  // swapped: the same object with xi and 1 + xi exchanged
    };
    // labels: 0, 1, xi = 2, 1 + xi = 3
    std::vector<Item> items = {
        {"H4F", hadamard(f4), h, hadamard(f4)},
        {"S4F", phase_gate(f4), s, phase_gate(f4)},
        {"Z4(1)", pauli_Z(f4, 1), real_mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}), pauli_Z(f4, 1)},
        {"Z4(xi)", pauli_Z(f4, 2), real_mat({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}), pauli_Z(f4, 3)},
        {"X4(1)", pauli_X(f4, 1), real_mat({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}), pauli_X(f4, 1)},
        {"X4(xi)", pauli_X(f4, 2), real_mat({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}), pauli_X(f4, 3)},
        {"M(xi)", mult_gate(f4, 2), real_mat({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}}), mult_gate(f4, 3)},
        {"M(1+xi)", mult_gate(f4, 3), real_mat({{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}}), mult_gate(f4, 2)},
    };
    std::string bad, relabel;
    for (const auto &it : items) {
        if (max_abs(it.built - it.printed) < 1e-12) continue;
        o.pass = false;
        bad += std::string(bad.empty() ? "" : ",") + it.name;
        if (max_abs(it.swapped - it.printed) < 1e-12) relabel += std::string(relabel.empty() ? "" : ",") + it.name;
    }
    // tr4 of squares of the lifted field elements
    const int want[] = {0, 2, 3, 3};
    bool tr_ok = true;
    for (int j = 0; j < 4; j++) {
        GaloisRingElem l = gr_lift(f4, elem_of(f4, j));
        tr_ok = tr_ok && galois_ring_trace(f4, gr_mul(f4, l, l)) == want[j];
    }
    o.pass = o.pass && tr_ok;
    o.detail = std::string("tr4 ") + (tr_ok ? "exact" : "WRONG");
    if (bad.empty()) {
        o.detail += ", all 8 matrices equal";
    } else {
        o.detail += ", differ: " + bad;
        if (relabel == bad) o.detail += " (each equals the printed one after exchanging xi and 1+xi; see README)";
    }
    return o;
}

// 4
Outcome conjugation_suite() {
    Outcome o;
    double worst = 0;
    auto acc = [&](double e) { worst = std::max(worst, e); };
    for (int d = 2; d <= 5; d++) {
        DimSpec dim = make_ring(d);
        Mat h = hadamard(dim), s = phase_gate(dim), x = pauli_X(dim, 1), z = pauli_Z(dim, 1);
        cplx tau = (d % 2 ? -1.0 : 1.0) * std::polar(1.0, M_PI / d);
        acc(max_abs(h * x * h.adjoint() - z));
        acc(max_abs(h * z * h.adjoint() - x.adjoint()));
        acc(max_abs(s * x * s.adjoint() - tau * x * z));
        acc(max_abs(h * h - mult_gate(dim, d - 1)));
        acc(max_abs(mat_pow(h, 4) - identity(d)));
    }
    // GR(4,3): the Hensel lift x^3 + 2x^2 + x + 3 of x^3 + x + 1
    for (DimSpec dim : {make_field(2, 2), make_field(2, 3, {}, {3, 1, 2, 1}), make_field(3, 2), make_field(5, 1)}) {
        const int d = dim.d;
        Mat h = hadamard(dim);
        for (int a = 1; a < d; a++) {
            acc(max_abs(h * pauli_X(dim, a) * h.adjoint() - pauli_Z(dim, a)));
            acc(max_abs(h * pauli_Z(dim, a) * h.adjoint() - pauli_X(dim, lab_neg(dim, a))));
            // S(a) conjugation: X(a) goes to a phase times X(a) Z(a)
            Mat sx = phase_gate(dim) * pauli_X(dim, a) * phase_gate(dim).adjoint();
            Mat xz = pauli_X(dim, a) * pauli_Z(dim, a);
            if (dim.p == 2) {
                GaloisRingElem l = gr_lift(dim, elem_of(dim, a));
                acc(max_abs(sx - chi4(dim, gr_mul(dim, l, l)) * xz));
            } else {
                acc(dist_up_to_phase(sx, xz));
            }
        }
        acc(max_abs(h * h - mult_gate(dim, lab_neg(dim, 1))));
        if (dim.p == 2) acc(max_abs(h * h - identity(d)));
        acc(max_abs(mat_pow(h, 4) - identity(d)));
    }
    o.pass = worst < 1e-10;
    o.detail = "d=2..5 ring and F4, F8, F9, F5; max err " + fmt("%.1e", worst);
    return o;
}

struct Compiled {
    EntanglingGateSpec gate;
    MeasurementPattern pattern;
};
std::vector<Compiled> g_compiled;

// 5
Outcome compiler_soundness() {
    auto t0 = Clock::now();
    Outcome o;
    Rng rng(2026);
    double worst = 0;
    std::string lens;
    for (int d : {2, 3, 4}) {
        DimSpec dim = table_dim(d);
        for (const char *f : {"cz", "light_shift", "cx"}) {
            EntanglingGateSpec gate = family(dim, f);
            IntrinsicGate gi = intrinsic_of(gate);
            const int bound = d * gi.pauli_order.value_or(0);
            std::vector<Mat> targets;
            for (int t = 0; t < 20; t++) targets.push_back(haar_unitary(d, rng));
            std::vector<MeasurementPattern> ps;
            try {
                ps = compile_unitaries(targets, gi);
            } catch (const Error &e) {
                o.pass = false;
                o.detail += std::string(" d=") + std::to_string(d) + " " + f + ": " + e.what();
                continue;
            }
            size_t longest = 0;
            for (size_t t = 0; t < ps.size(); t++) {
                double r = pattern_residual(ps[t], targets[t]);
                worst = std::max(worst, r);
                longest = std::max(longest, ps[t].steps.size());
                if (r >= 1e-6 || (int)ps[t].steps.size() > bound) o.pass = false;
                g_compiled.push_back({gate, ps[t]});
            }
            lens += " " + std::to_string(longest) + "/" + std::to_string(bound);
        }
    }
    double s = seconds_since(t0);
    if (s >= 60) o.pass = false;
    o.detail = "180 targets, worst residual " + fmt("%.1e", worst) + ", longest/bound" + lens + ", " + fmt("%.2f s", s) +
               o.detail;
    return o;
}

// 6
Outcome determinism() {
    Outcome o;
    if (g_compiled.empty()) return {false, "no compiled patterns"};
    Rng rng(6);
    int failures = 0, runs = 0;
    double worst = 1;
    for (const auto &c : g_compiled) {
        ResourceGraph chain = chain_graph(c.gate, (int)c.pattern.steps.size() + 1);
        TrialSummary s = run_trials(chain, c.pattern, random_state(c.pattern.dim.d, rng), 1000 + runs, 100);
        failures += s.failures;
        worst = std::min(worst, s.min_fidelity);
        runs += s.trials;
    }
    o.pass = failures == 0 && worst >= 1 - 1e-9;
    o.detail = std::to_string(runs) + " trajectories, " + std::to_string(failures) + " FrameMismatch, min fidelity 1-" +
               fmt("%.1e", 1 - worst);
    return o;
}

// 7
Outcome clifford_single_step() {
    Outcome o;
    Rng rng(7);
    int patterns = 0, runs = 0, failures = 0, adaptive = 0, wrong = 0;
    auto check = [&](const EntanglingGateSpec &gate, const Mat &c) {
        MeasurementPattern p = compile_clifford(c, intrinsic_of(gate));
        patterns++;
        for (const auto &s : p.steps) adaptive += s.adaptive;
        if (!equal_up_to_phase(pattern_unitary(p), matrix_of_pauli(p.frame).m * c, 1e-9)) wrong++;
        TrialSummary s = run_trials(chain_graph(gate, (int)p.steps.size() + 1), p, random_state(c.rows(), rng), 70 + patterns, 100);
        failures += s.failures;
        runs += s.trials;
    };
    for (int d : {2, 3, 4}) {
        DimSpec dim = table_dim(d);
        for (const char *f : {"cz", "light_shift", "cx"}) {
            EntanglingGateSpec gate = family(dim, f);
            check(gate, phase_gate(dim));
            check(gate, hadamard(dim));
            for (int l = 2; l < d; l++)
                if (lab_is_unit(dim, l)) check(gate, mult_gate(dim, l));
        }
    }
    DimSpec d3 = make_ring(3);
    auto reps = all_symplectic(d3);
    std::uniform_int_distribution<int> pick(0, (int)reps.size() - 1), lab(0, 2);
    for (int t = 0; t < 20; t++) {
        Mat c = synthesize(reps[pick(rng)]) * pauli_Z(d3, lab(rng)) * pauli_X(d3, lab(rng));
        for (const char *f : {"cz", "light_shift", "cx"}) check(family(d3, f), c);
    }
    o.pass = adaptive == 0 && wrong == 0 && failures == 0;
    o.detail = std::to_string(patterns) + " patterns, " + std::to_string(adaptive) + " adaptive steps, " +
               std::to_string(wrong) + " wrong products, " + std::to_string(failures) + "/" + std::to_string(runs) +
               " failed trajectories";
    return o;
}

// 8
Outcome equivalences() {
    Outcome o;
    Rng rng(8);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    int bad_a = 0, unitary = 0, total_a = 0;
    for (int d : {2, 3}) {
        DimSpec dim = make_ring(d);
        for (int t = 0; t < 200; t++) {
            Eigen::MatrixXd th(d, d);
            for (int j = 0; j < d; j++)
                for (int k = 0; k < d; k++) th(j, k) = u(rng);
            if (t % 3 == 1) {
                // CZ dressed with local phases
                Eigen::VectorXd a(d), b(d);
                for (int j = 0; j < d; j++) a(j) = u(rng), b(j) = u(rng);
                for (int j = 0; j < d; j++)
                    for (int k = 0; k < d; k++) th(j, k) = 2 * M_PI * j * k / d + a(j) + b(k);
            } else if (t % 3 == 2) {
                th = named_light_shift(dim, t % 2 ? light_shift_angle(d) : u(rng)).theta;
            }
            EntanglingGateSpec s = diagonal_gate(dim, th);
            bool unit = intrinsic_of(s).unitary;
            unitary += unit;
            total_a++;
            if (unit != is_max_entangled(make_state(dim, resource_pair(s)), {0})) bad_a++;
        }
    }
    int bad_b = 0, cliff = 0, non = 0;
    for (DimSpec dim : {make_ring(2), make_ring(3), make_ring(5), make_field(2, 2)}) {
        const int d = dim.d;
        std::uniform_int_distribution<int> lab(0, d - 1);
        for (int t = 0; t < 30; t++) {
            int n = dim.is_field() ? 1 : 1 + t % (d - 1);
            Mat loc1 = mat_pow(shear_gate(dim, 1), lab(rng)) * pauli_Z(dim, lab(rng));
            Mat loc2 = mat_pow(shear_gate(dim, 1), lab(rng)) * pauli_Z(dim, lab(rng));
            Mat ge = kron(loc1, loc2) * twisted_cz(dim, n, 0);
            Eigen::MatrixXd th(d, d);
            for (int j = 0; j < d; j++)
                for (int k = 0; k < d; k++) th(j, k) = std::arg(ge(j * d + k, j * d + k));
            EntanglingGateSpec s = diagonal_gate(dim, th);
            bool a = conjugation_table(gate_matrix(s), dim).clifford;
            bool b = intrinsic_of(s).cert.has_value();
            cliff += a;
            if (a != b) bad_b++;
        }
    }
    for (int d : {2, 3}) {
        DimSpec dim = make_ring(d);
        for (int t = 0; t < 50; t++) {
            Eigen::MatrixXd th(d, d);
            for (int j = 0; j < d; j++)
                for (int k = 0; k < d; k++) th(j, k) = u(rng);
            EntanglingGateSpec s = diagonal_gate(dim, th);
            bool a = conjugation_table(gate_matrix(s), dim).clifford;
            bool b = intrinsic_of(s).cert.has_value();
            non += !a;
            if (a != b) bad_b++;
        }
    }
    o.pass = bad_a == 0 && bad_b == 0;
    o.detail = "(a) " + std::to_string(total_a) + " gates, " + std::to_string(unitary) + " unitary, " +
               std::to_string(bad_a) + " counterexamples; (b) " + std::to_string(cliff) + " Clifford + " +
               std::to_string(non) + " non-Clifford, " + std::to_string(bad_b) + " counterexamples";
    return o;
}

// 9
Outcome mediators() {
    Outcome o;
    Rng rng(9);
    int checks = 0, bad = 0;
    double worst_schmidt = 1;
    for (int d : {2, 3}) {
        DimSpec dim = make_ring(d);
        EntanglingGateSpec cx = named_cx(dim);
        Mat s = phase_gate(dim);
        for (int in = 0; in < d; in++) {
            Vec psi = random_state(d * d, rng);
            for (int k = 0; k < d; k++) {
                MediatorResult r = mediator_step(cx, psi, MediatorMode::Entangle, rng, k, MediatorInit::Resource);
                Mat z = pauli_Z(dim, lab_neg(dim, k));
                Vec want = kron(z, z) * cz_gate(dim) * kron(s, s) * psi;
                checks++;
                if (state_fidelity(r.output, want) < 1 - 1e-9) bad++;
                Vec prod = kron(Mat(random_state(d, rng)), Mat(random_state(d, rng))).col(0);
                MediatorResult q = mediator_step(cx, prod, MediatorMode::Disconnect, rng, k, MediatorInit::Resource);
                double c0 = schmidt(make_state(dim, q.output), {0}).coefficients(0);
                worst_schmidt = std::min(worst_schmidt, c0);
                checks++;
                if (c0 < 1 - 1e-8) bad++;
            }
        }
        EntanglingGateSpec cz = named_cz(dim);
        Mat g = intrinsic_of(cz).matrix;
        Mat gg = kron(g, g);
        for (int t = 0; t < 50; t++) {
            Vec psi = random_state(d * d, rng);
            EdgeResult r = entangle_via_edge(cz, psi, rng);
            Vec want = matrix_of_pauli(r.frame).m * gg * cz_gate(dim) * gg * psi;
            checks++;
            if (state_fidelity(r.output, want) < 1 - 1e-9) bad++;
        }
    }
    o.pass = bad == 0;
    o.detail = std::to_string(checks) + " checks (mediator outcomes x inputs, edge protocol 50/d), " +
               std::to_string(bad) + " failures, min Schmidt coefficient " + fmt("%.12f", worst_schmidt);
    return o;
}

// 10
Outcome rewriting() {
    Outcome o;
    Rng rng(10);
    int checks = 0, bad = 0;
    double worst = 1;
    auto note = [&](double f) {
        checks++;
        worst = std::min(worst, f);
        if (f < 1 - 1e-8) bad++;
    };
    for (int d : {2, 3}) {
        DimSpec dim = make_ring(d);
        for (const char *f : {"cz", "light_shift"}) {
            EntanglingGateSpec gate = family(dim, f);
            std::vector<ResourceGraph> graphs = {chain_graph(gate, 3), chain_graph(gate, 5), lattice_diagonal(gate, 2, 2),
                                                 lattice_diagonal(gate, 2, 3)};
            for (const auto &g : graphs) {
                for (const auto &v : g.vertices) {
                    for (int k = 0; k < d; k++) {
                        note(vertex_delete(g, v.id, rng, k).fidelity);
                        try {
                            note(local_complement(g, v.id, rng, k).fidelity);
                        } catch (const Error &e) {
                            checks++;
                            bad++;
                        }
                    }
                }
            }
        }
    }
    // qubit 3-chain: the middle measurement joins the ends
    bool joined = true;
    for (int k = 0; k < 2; k++) {
        RewriteResult r = local_complement(chain_graph(named_cz(make_ring(2)), 3), 1, rng, k);
        joined = joined && r.graph.edges.size() == 1 && r.graph.edges[0].control == 0 && r.graph.edges[0].target == 2;
        note(r.fidelity);
    }
    o.pass = bad == 0 && joined;
    o.detail = std::to_string(checks) + " rewrites on <= 6 vertices, " + std::to_string(bad) +
               " failures, min fidelity 1-" + fmt("%.1e", 1 - worst) + (joined ? ", qubit chain ends joined" : ", qubit chain ends NOT joined");
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> expected;
    for (int i = 1; i + 1 < argc; i++) {
        if (!std::strcmp(argv[i], "--expect-fail")) expected.insert(std::atoi(argv[++i]));
    }
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"resource table reproduction", table_reproduction},
        {"maximal-entanglement angles", light_shift_angles},
        {"explicit ququart matrices", ququart_matrices},
        {"conjugation suite", conjugation_suite},
        {"compiler soundness and length bound", compiler_soundness},
        {"MBQC determinism", determinism},
        {"Clifford patterns in one time step", clifford_single_step},
        {"unitarity and Clifford equivalences", equivalences},
        {"mediator and edge protocols", mediators},
        {"graph rewriting", rewriting},
    };
    std::set<int> failed;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("threw ") + e.what()};
        }
        if (!o.pass) failed.insert((int)i + 1);
        std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    if (!expected.empty()) std::printf("failures expected by the harness: %zu\n", expected.size());
    return failed == expected ? 0 : 1;
}
