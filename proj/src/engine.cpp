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

#include "qmbqc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "qmbqc/gates.hpp"

namespace qmbqc {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; i++) r *= b;
    return r;
}

void check_size(const DimSpec &dim, int n) {
    long long total = 1;
    for (int i = 0; i < n; i++) {
        total *= dim.d;
        if (total > kMaxAmplitudes) {
            throw Error(ErrorCode::StateTooLarge, std::to_string(dim.d) + "^" + std::to_string(n) + " amplitudes");
        }
    }
}

// amps given with site k holding vertex order[k]; returns them in vertex order
Vec permute_sites(const Vec &amps, int d, const std::vector<int> &order) {
    const int n = (int)order.size();
    Vec out(amps.size());
    std::vector<int> digit(n);
    for (long long idx = 0; idx < amps.size(); idx++) {
        long long t = idx;
        for (int k = n - 1; k >= 0; k--) {
            digit[k] = (int)(t % d);
            t /= d;
        }
        long long dst = 0;
        std::vector<int> nat(n);
        for (int k = 0; k < n; k++) nat[order[k]] = digit[k];
        for (int k = 0; k < n; k++) dst = dst * d + nat[k];
        out(dst) = amps(idx);
    }
    return out;
}

Vec normalized_vec(const Vec &v) {
    double n = v.norm();
    return n > 0 ? Vec(v / n) : v;
}

// columns D_{-phi} |k_X>
Mat rotated_x_basis(const DimSpec &dim, const std::vector<double> &phases) {
    std::vector<double> neg(phases.size());
    for (size_t k = 0; k < phases.size(); k++) neg[k] = -phases[k];
    return diag_phases(neg) * x_basis(dim);
}

PauliWord z_word(const DimSpec &dim, int k) {
    return make_word(dim, {k}, {0});
}

// sub-word on two sites of an n-site word
PauliWord conjugate_sites(const Mat &u, const PauliWord &w, int s0, int s1) {
    const DimSpec &dim = w.dim;
    PauliWord sub = make_word(dim, {w.z[s0], w.z[s1]}, {w.x[s0], w.x[s1]});
    PauliWord img = conjugate_word(u, sub);
    PauliWord out = w;
    out.z[s0] = img.z[0];
    out.x[s0] = img.x[0];
    out.z[s1] = img.z[1];
    out.x[s1] = img.x[1];
    return with_phase(out, img.phase_num * (w.phase_den / img.phase_den));
}

std::vector<const GraphEdge *> seq_order(const ResourceGraph &g) {
    std::vector<const GraphEdge *> es;
    for (const auto &e : g.edges) es.push_back(&e);
    std::stable_sort(es.begin(), es.end(), [](const GraphEdge *a, const GraphEdge *b) { return a->seq < b->seq; });
    return es;
}

Vec apply_edges(const ResourceGraph &g, Vec amps, const std::vector<const GraphEdge *> &order) {
    StateVector s = make_state(g.dim, amps);
    for (const GraphEdge *e : order) {
        s = apply(s, gate_matrix(e->gate), {vertex_index(g, e->control), vertex_index(g, e->target)});
    }
    return s.amps;
}

Mat intrinsic_for(const EntanglingGateSpec &gate, const Vec &target_init) {
    auto blocks = gate_blocks(gate);
    const int d = gate.dim.d;
    Mat gi(d, d);
    for (int j = 0; j < d; j++) gi.col(j) = blocks[j] * target_init;
    return gi;
}

std::string label_str(int v) {
    return std::to_string(v);
}

}  // namespace

Vec vertex_state(const DimSpec &dim, const GraphVertex &v) {
    if (v.amps) {
        if (v.amps->size() != dim.d) throw Error(ErrorCode::DimensionMismatch, "vertex amplitudes");
        return normalized_vec(*v.amps);
    }
    if (v.z_label) {
        Vec s = Vec::Zero(dim.d);
        s(*v.z_label) = 1;
        return s;
    }
    std::vector<double> ph = v.phases;
    if (ph.empty()) ph.assign(dim.d, 0.0);
    if ((int)ph.size() != dim.d) throw Error(ErrorCode::DimensionMismatch, "vertex phases");
    return diag_phases(ph) * plus_state(dim);
}

int vertex_index(const ResourceGraph &g, int id) {
    for (size_t i = 0; i < g.vertices.size(); i++) {
        if (g.vertices[i].id == id) return (int)i;
    }
    throw Error(ErrorCode::InvalidArgument, "no vertex " + std::to_string(id));
}

std::vector<int> neighbors(const ResourceGraph &g, int id) {
    std::vector<int> r;
    for (const auto &e : g.edges) {
        if (e.control == id) r.push_back(e.target);
        if (e.target == id) r.push_back(e.control);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

bool all_diagonal(const ResourceGraph &g) {
    for (const auto &e : g.edges) {
        if (e.gate.kind != GateKind::Diagonal) return false;
    }
    return true;
}

ResourceGraph remove_vertex(const ResourceGraph &g, int id) {
    vertex_index(g, id);
    ResourceGraph r;
    r.dim = g.dim;
    for (const auto &v : g.vertices) {
        if (v.id != id) r.vertices.push_back(v);
    }
    for (const auto &e : g.edges) {
        if (e.control != id && e.target != id) r.edges.push_back(e);
    }
    return r;
}

StateVector build_with_input(const ResourceGraph &g, const std::vector<int> &input_ids, const Vec &input) {
    const int n = (int)g.vertices.size();
    check_size(g.dim, n);
    if (input.size() != ipow(g.dim.d, (int)input_ids.size())) throw Error(ErrorCode::DimensionMismatch, "input size");
    for (const auto &e : g.edges) {
        if (e.control == e.target) throw Error(ErrorCode::InvalidArgument, "self edge");
        vertex_index(g, e.control);
        vertex_index(g, e.target);
    }
    std::vector<int> order;
    Mat acc = input.size() ? Mat(normalized_vec(input)) : Mat::Identity(1, 1);
    for (int id : input_ids) order.push_back(vertex_index(g, id));
    for (int i = 0; i < n; i++) {
        if (std::find(order.begin(), order.end(), i) != order.end()) continue;
        order.push_back(i);
        acc = kron(acc, Mat(vertex_state(g.dim, g.vertices[i])));
    }
    Vec amps = permute_sites(acc.col(0), g.dim.d, order);
    auto es = seq_order(g);
    Vec out = apply_edges(g, amps, es);
    // diagonal gates commute; check one other order on small graphs
    if (all_diagonal(g) && es.size() > 1 && amps.size() <= 100000) {
        std::vector<const GraphEdge *> rev(es.rbegin(), es.rend());
        Vec alt = apply_edges(g, amps, rev);
        if ((alt - out).cwiseAbs().maxCoeff() > 1e-12) throw Error(ErrorCode::InvalidArgument, "diagonal build depends on order");
    }
    return make_state(g.dim, out);
}

StateVector build(const ResourceGraph &g) {
    return build_with_input(g, {}, Vec::Ones(1));
}

ResourceGraph chain_graph(const EntanglingGateSpec &gate, int length) {
    ResourceGraph g;
    g.dim = gate.dim;
    for (int i = 0; i < length; i++) g.vertices.push_back({i, gate.init_phases, std::nullopt, std::nullopt});
    for (int i = 0; i + 1 < length; i++) g.edges.push_back({i, i + 1, gate, i});
    return g;
}

ResourceGraph lattice_diagonal(const EntanglingGateSpec &gate, int rows, int cols) {
    if (gate.kind != GateKind::Diagonal) throw Error(ErrorCode::InvalidArgument, "diagonal lattice needs a diagonal gate");
    ResourceGraph g;
    g.dim = gate.dim;
    for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++) g.vertices.push_back({r * cols + c, gate.init_phases, std::nullopt, std::nullopt});
    int seq = 0;
    for (int r = 0; r < rows; r++)
        for (int c = 0; c + 1 < cols; c++) g.edges.push_back({r * cols + c, r * cols + c + 1, gate, seq++});
    for (int r = 0; r + 1 < rows; r++)
        for (int c = 0; c < cols; c++) g.edges.push_back({r * cols + c, (r + 1) * cols + c, gate, seq++});
    return g;
}

ResourceGraph lattice_block(const EntanglingGateSpec &gate, int rows, int cols, const Vec &mediator_init) {
    ResourceGraph g;
    g.dim = gate.dim;
    const int grid = 2 * rows - 1;
    for (int r = 0; r < grid; r++) {
        for (int c = 0; c < cols; c++) {
            GraphVertex v{r * cols + c, gate.init_phases, std::nullopt, std::nullopt};
            if (r % 2 == 1) v.amps = mediator_init;
            g.vertices.push_back(v);
        }
    }
    int seq = 0;
    for (int r = 0; r < grid; r += 2)
        for (int c = 0; c + 1 < cols; c++) g.edges.push_back({r * cols + c, r * cols + c + 1, gate, seq++});
    for (int r = 1; r < grid; r += 2) {
        for (int c = 0; c < cols; c++) {
            g.edges.push_back({(r - 1) * cols + c, r * cols + c, gate, seq++});
            g.edges.push_back({(r + 1) * cols + c, r * cols + c, gate, seq++});
        }
    }
    return g;
}

ResourceGraph edge_graph(const EntanglingGateSpec &gate) {
    ResourceGraph g;
    g.dim = gate.dim;
    for (int i = 0; i < 6; i++) g.vertices.push_back({i, gate.init_phases, std::nullopt, std::nullopt});
    g.edges = {{0, 1, gate, 0}, {1, 2, gate, 1}, {3, 4, gate, 2}, {4, 5, gate, 3}, {1, 4, gate, 4}};
    return g;
}

namespace {

// chain edges (i -> i+1) for the first `needed` vertices
std::vector<const GraphEdge *> chain_edges(const ResourceGraph &g, int needed, const Mat &gi) {
    if ((int)g.vertices.size() < needed) {
        throw Error(ErrorCode::InvalidArgument, "chain has " + std::to_string(g.vertices.size()) + " vertices, needs " +
                                                    std::to_string(needed));
    }
    std::vector<const GraphEdge *> out;
    int last_seq = 0;
    for (int i = 0; i + 1 < needed; i++) {
        int a = g.vertices[i].id, b = g.vertices[i + 1].id;
        const GraphEdge *found = nullptr;
        for (const auto &e : g.edges) {
            if (e.control == a && e.target == b) found = &e;
        }
        if (!found) throw Error(ErrorCode::InvalidArgument, "missing chain edge " + label_str(a) + "->" + label_str(b));
        if (found->gate.kind == GateKind::BlockDiagonal && i > 0 && found->seq <= last_seq) {
            throw Error(ErrorCode::InvalidArgument, "block-diagonal chain must be applied left to right");
        }
        last_seq = found->seq;
        Mat here = intrinsic_for(found->gate, vertex_state(g.dim, g.vertices[i + 1]));
        if (!equal_up_to_phase(here, gi, 1e-8)) {
            throw Error(ErrorCode::InvalidArgument, "chain edge does not realize the pattern's intrinsic gate");
        }
        out.push_back(found);
    }
    return out;
}

std::vector<double> adapted(const DimSpec &dim, const std::vector<double> &ph, const PauliWord &frame, bool adaptive) {
    if (!adaptive) return ph;
    // X^x D_phi X^{-x} has entries phi_{v - x}
    std::vector<double> out(ph.size());
    for (int v = 0; v < dim.d; v++) out[v] = ph[lab_sub(dim, v, frame.x[0])];
    return out;
}

PauliWord next_frame(const Mat &g, const PauliWord &f, const std::vector<double> &ph, bool adaptive, int k) {
    const DimSpec &dim = f.dim;
    PauliWord inner = adaptive ? f : conjugate_word(diag_phases(ph), f);
    return conjugate_word(g, normal_form(z_word(dim, lab_neg(dim, k)), inner));
}

int forced_at(const std::vector<int> &forced, size_t i, Rng &rng, const StateVector &s, const MeasurementBasis &b,
              int site, MeasureResult *out) {
    std::optional<int> f;
    if (i < forced.size()) f = forced[i];
    *out = measure(s, b, site, &rng, f);
    return out->outcome;
}

RunResult finish(const DimSpec &dim, const Vec &out, const PauliWord &frame, const Mat &ideal, const Vec &input,
                 PauliFrame pf, double min_fid) {
    RunResult r;
    r.output = out;
    pf.frames = {frame};
    r.frame = pf;
    r.ideal = ideal;
    Vec expect = matrix_of_pauli(frame).m * ideal * input;
    r.fidelity = state_fidelity(out, expect);
    if (r.fidelity < min_fid) {
        throw Error(ErrorCode::FrameMismatch, "fidelity " + std::to_string(r.fidelity) + " against frame * U * input");
    }
    (void)dim;
    return r;
}

}  // namespace

RunResult run_pattern(const ResourceGraph &chain, const MeasurementPattern &pattern, const Vec &input, Rng &rng,
                      const RunOptions &opt) {
    const DimSpec &dim = pattern.dim;
    const int d = dim.d;
    if (input.size() != d) throw Error(ErrorCode::DimensionMismatch, "single-qudit input expected");
    const Mat &g = pattern.intrinsic.matrix;
    const int L = (int)pattern.steps.size();
    const bool bell = opt.coupling == InputCoupling::Bell;
    auto edges = chain_edges(chain, L + 1 + (bell ? 1 : 0), g);
    PauliFrame pf;
    Vec cur = normalized_vec(input);
    PauliWord frame = identity_word(dim, 1);
    size_t mi = 0;
    int head = 0;
    Mat ideal = pattern_unitary(pattern);
    if (bell) {
        std::optional<int> f;
        if (!opt.forced.empty()) f = opt.forced[0];
        CoupleResult c = couple_input(cur, edges[0]->gate, rng, f);
        cur = c.output;
        frame = c.frame;
        pf.history.push_back({-1, c.outcome});
        mi = 1;
        head = 1;
        ideal = ideal * g;
    }
    for (int i = 0; i < L; i++) {
        const PatternStep &st = pattern.steps[i];
        const GraphEdge *e = edges[head + i];
        Vec fresh = vertex_state(dim, chain.vertices[head + i + 1]);
        StateVector two = make_state(dim, gate_matrix(e->gate) * kron(cur, fresh));
        std::vector<double> ph = adapted(dim, st.phases, frame, st.adaptive);
        MeasurementBasis b = make_basis(d, rotated_x_basis(dim, ph), "step");
        MeasureResult m;
        int k = forced_at(opt.forced, mi++, rng, two, b, 0, &m);
        frame = next_frame(g, frame, st.phases, st.adaptive, k);
        pf.history.push_back({i, k});
        cur = normalized_vec(m.post.amps);
    }
    return finish(dim, cur, frame, ideal, normalized_vec(input), pf, opt.min_fidelity);
}

RunResult run_pattern_dense(const ResourceGraph &chain, const MeasurementPattern &pattern, const Vec &input, Rng &rng,
                            const RunOptions &opt) {
    if (opt.coupling != InputCoupling::Direct) throw Error(ErrorCode::InvalidArgument, "dense run takes direct input");
    const DimSpec &dim = pattern.dim;
    const Mat &g = pattern.intrinsic.matrix;
    const int L = (int)pattern.steps.size();
    chain_edges(chain, L + 1, g);
    ResourceGraph sub;
    sub.dim = dim;
    for (int i = 0; i <= L; i++) sub.vertices.push_back(chain.vertices[i]);
    for (const auto &e : chain.edges) {
        bool in_c = false, in_t = false;
        for (const auto &v : sub.vertices) {
            in_c = in_c || v.id == e.control;
            in_t = in_t || v.id == e.target;
        }
        if (in_c && in_t) sub.edges.push_back(e);
    }
    StateVector s = build_with_input(sub, {sub.vertices[0].id}, input);
    PauliFrame pf;
    PauliWord frame = identity_word(dim, 1);
    for (int i = 0; i < L; i++) {
        const PatternStep &st = pattern.steps[i];
        std::vector<double> ph = adapted(dim, st.phases, frame, st.adaptive);
        MeasurementBasis b = make_basis(dim.d, rotated_x_basis(dim, ph), "step");
        MeasureResult m;
        int k = forced_at(opt.forced, i, rng, s, b, 0, &m);
        frame = next_frame(g, frame, st.phases, st.adaptive, k);
        pf.history.push_back({i, k});
        s = m.post;
    }
    return finish(dim, normalized_vec(s.amps), frame, pattern_unitary(pattern), normalized_vec(input), pf,
                  opt.min_fidelity);
}

TrialSummary run_trials(const ResourceGraph &chain, const MeasurementPattern &pattern, const Vec &input,
                        std::uint64_t seed, int trials, InputCoupling coupling) {
    std::vector<std::future<double>> jobs;
    for (int t = 0; t < trials; t++) {
        jobs.push_back(std::async(std::launch::async, [&, t] {
            Rng rng(seed + (std::uint64_t)t);
            RunOptions opt;
            opt.coupling = coupling;
            try {
                return run_pattern(chain, pattern, input, rng, opt).fidelity;
            } catch (const Error &e) {
                if (e.code() != ErrorCode::FrameMismatch) throw;
                return -1.0;
            }
        }));
    }
    TrialSummary s;
    s.trials = trials;
    for (auto &j : jobs) {
        double f = j.get();
        if (f < 0) {
            s.failures++;
            s.min_fidelity = 0;
        } else {
            s.min_fidelity = std::min(s.min_fidelity, f);
        }
    }
    return s;
}

CoupleResult couple_input(const Vec &psi, const EntanglingGateSpec &gate, Rng &rng, std::optional<int> forced) {
    const DimSpec &dim = gate.dim;
    const int d = dim.d;
    if (psi.size() != d) throw Error(ErrorCode::DimensionMismatch, "single-qudit input expected");
    Vec phi = init_state(gate);
    Mat gi = intrinsic_for(gate, phi);
    if (!is_unitary(gi, 1e-9)) throw Error(ErrorCode::NonUnitary, "intrinsic gate is not unitary");
    Vec pair = gate_matrix(gate) * kron(phi, phi);
    StateVector s = make_state(dim, kron(normalized_vec(psi), pair));
    std::vector<double> ph = gate.init_phases;
    if (ph.empty()) ph.assign(d, 0.0);
    Mat rot = kron(identity(d), diag_phases(ph)) * bell_basis(dim).vectors;
    MeasureResult m = measure(s, make_basis(d, rot, "rotated Bell"), {0, 1}, &rng, forced);
    Vec w = rot.col(m.outcome);
    Mat byp(d, d);
    for (int j = 0; j < d; j++)
        for (int i = 0; i < d; i++) byp(j, i) = std::conj(w(i * d + j)) * std::polar(1.0, ph[j]) * std::sqrt((double)d);
    auto q = pauli_quotient(byp, identity(d), dim);
    if (!q) throw Error(ErrorCode::FrameMismatch, "Bell by-product is not a Pauli");
    CoupleResult r;
    r.output = normalized_vec(m.post.amps);
    r.byproduct = *q;
    r.frame = conjugate_word(gi, *q);
    r.outcome = m.outcome;
    return r;
}

EdgeResult entangle_via_edge(const EntanglingGateSpec &gate, const Vec &input, Rng &rng, const std::vector<int> &forced) {
    if (gate.kind != GateKind::Diagonal) throw Error(ErrorCode::InvalidArgument, "edge protocol needs a diagonal gate");
    const DimSpec &dim = gate.dim;
    const int d = dim.d;
    if (input.size() != d * d) throw Error(ErrorCode::DimensionMismatch, "two-qudit input expected");
    ResourceGraph g = edge_graph(gate);
    Mat gi = intrinsic_for(gate, init_state(gate));
    Mat ge = gate_matrix(gate);
    Mat gg = kron(gi, gi);
    StateVector s = build_with_input(g, {0, 3}, input);
    std::vector<int> live{0, 1, 2, 3, 4, 5};
    MeasurementBasis xb = make_basis(d, x_basis(dim), "X");
    EdgeResult r;
    auto meas = [&](int id) {
        int site = (int)(std::find(live.begin(), live.end(), id) - live.begin());
        std::optional<int> f;
        if (r.outcomes.size() < forced.size()) f = forced[r.outcomes.size()];
        MeasureResult m = measure(s, xb, site, &rng, f);
        s = m.post;
        live.erase(live.begin() + site);
        r.outcomes.push_back(m.outcome);
        return m.outcome;
    };
    int k0 = meas(0), k3 = meas(3);
    PauliWord f = make_word(dim, {lab_neg(dim, k0), lab_neg(dim, k3)}, {0, 0});
    f = conjugate_word(gg, f);
    f = conjugate_word(ge, f);
    int k1 = meas(1), k4 = meas(4);
    f = conjugate_word(gg, normal_form(make_word(dim, {lab_neg(dim, k1), lab_neg(dim, k4)}, {0, 0}), f));
    r.output = normalized_vec(s.amps);
    r.frame = f;
    r.logical = gg * ge * gg;
    Vec expect = matrix_of_pauli(f).m * r.logical * normalized_vec(input);
    r.fidelity = state_fidelity(r.output, expect);
    if (r.fidelity < 1 - 1e-9) throw Error(ErrorCode::FrameMismatch, "edge protocol output does not match");
    return r;
}

MediatorResult mediator_step(const EntanglingGateSpec &gate, const Vec &psi, MediatorMode mode, Rng &rng,
                             std::optional<int> forced, MediatorInit init) {
    const DimSpec &dim = gate.dim;
    const int d = dim.d;
    if (psi.size() != d * d) throw Error(ErrorCode::DimensionMismatch, "two-qudit input expected");
    ControlledPauliFactorization f = factor_block_controlled_pauli(gate);
    Mat p = matrix_of_pauli(f.p).m;
    MediatorResult r;
    Mat d_eta = identity(d);
    if (init == MediatorInit::PauliMap) {
        auto [rep, l] = map_pauli_to_Z(dim, f.p.z[0], f.p.x[0]);
        if (!lab_is_unit(dim, l)) throw Error(ErrorCode::NonInvertibleGcd, "gcd " + std::to_string(l) + " is not invertible");
        Mat c = synthesize(rep);
        Mat q = c * p * c.adjoint();
        cplx eta = q(0, 0);
        if (max_abs(q - eta * pauli_Z(dim, l)) > 1e-9) throw Error(ErrorCode::NotControlledPauliForm, "C P C^-1 is not Z^l");
        for (int k = 0; k < d; k++) d_eta(k, k) = std::pow(eta, k);
        r.mediator_init = c.adjoint() * plus_state(dim);
        r.gc = c.adjoint() * hadamard(dim) * mult_gate(dim, l);
    } else {
        if (!is_unitary(mat_pow(p, d) * 1.0) || max_abs(mat_pow(p, d) - identity(d)) > 1e-9) {
            throw Error(ErrorCode::NotControlledPauliForm, "P^d is not the identity");
        }
        r.mediator_init = init_state(gate);
        r.gc = Mat(d, d);
        Mat pk = identity(d);
        for (int m = 0; m < d; m++) {
            r.gc.col(m) = pk * r.mediator_init;
            pk = p * pk;
        }
        if (!is_unitary(r.gc, 1e-9)) throw Error(ErrorCode::NonUnitary, "mediator intrinsic gate is not unitary");
    }
    // sites: q1, q2, mediator
    Mat ge = gate_matrix(gate);
    Mat c2inv = f.c2.adjoint();
    StateVector s = make_state(dim, kron(normalized_vec(psi), r.mediator_init));
    s = apply(s, ge, {0, 2});
    s = apply(s, c2inv, {2});
    s = apply(s, ge, {1, 2});
    s = apply(s, c2inv, {2});
    r.corrections.push_back({2, c2inv, "C2^dag after each gate on the mediator"});
    Mat sgate = phase_gate(dim);
    r.basis = mode == MediatorMode::Disconnect ? Mat(r.gc * x_basis(dim)) : Mat(r.gc * sgate.adjoint() * x_basis(dim));
    MeasureResult m = measure(s, make_basis(d, r.basis, "mediator"), 2, &rng, forced);
    r.outcome = m.outcome;
    r.output = normalized_vec(m.post.amps);
    int mk = lab_neg(dim, m.outcome);
    r.frame = make_word(dim, {mk, mk}, {0, 0});
    Mat loc = f.c1 * d_eta;
    if (!loc.isIdentity(1e-12)) r.corrections.push_back({0, loc, "C1 D_eta on each computational qudit"});
    Mat zz = kron(pauli_Z(dim, mk), pauli_Z(dim, mk));
    Mat ll = kron(loc, loc);
    if (mode == MediatorMode::Disconnect) {
        r.expected = ll;
    } else {
        r.expected = ll * cz_gate(dim) * kron(sgate, sgate);
    }
    // expected acts before the Z frame: output = frame * expected * psi
    Vec want = zz * r.expected * normalized_vec(psi);
    r.fidelity = state_fidelity(r.output, want);
    if (r.fidelity < 1 - 1e-9) throw Error(ErrorCode::FrameMismatch, "mediator output does not match");
    return r;
}

StateVector apply_corrections(const StateVector &state, const ResourceGraph &g, const std::vector<Correction> &cs) {
    StateVector s = state;
    for (const auto &c : cs) s = apply(s, c.op, {vertex_index(g, c.vertex)});
    return s;
}

RewriteResult vertex_delete(const ResourceGraph &g, int vertex, Rng &rng, std::optional<int> forced) {
    if (!all_diagonal(g)) throw Error(ErrorCode::InvalidArgument, "vertex deletion needs diagonal gates");
    const DimSpec &dim = g.dim;
    const int d = dim.d;
    StateVector s = build(g);
    MeasureResult m = measure(s, z_basis(dim), vertex_index(g, vertex), &rng, forced);
    RewriteResult r;
    r.graph = remove_vertex(g, vertex);
    r.posterior = m.post;
    r.outcome = m.outcome;
    const int z = m.outcome;
    for (const auto &e : g.edges) {
        if (e.control != vertex && e.target != vertex) continue;
        bool ctrl = e.control == vertex;
        int u = ctrl ? e.target : e.control;
        Mat op = Mat::Zero(d, d);
        for (int k = 0; k < d; k++) op(k, k) = std::polar(1.0, -(ctrl ? e.gate.theta(z, k) : e.gate.theta(k, z)));
        std::string label = ctrl ? "C2^dag" : "C1^dag";
        try {
            DiagonalFactorization fac = factor_diagonal_clifford(e.gate);
            Mat c = ctrl ? fac.c2 : fac.c1;
            if (auto q = pauli_quotient(op, c.adjoint(), dim)) {
                if (!q->is_identity_up_to_phase()) label += " Z^" + std::to_string(q->z[0]);
            }
        } catch (const Error &) {
            label = "diag";
        }
        r.corrections.push_back({u, op, label});
    }
    StateVector fixed = apply_corrections(r.posterior, r.graph, r.corrections);
    r.fidelity = state_fidelity(fixed.amps, build(r.graph).amps);
    return r;
}

PauliWord vertex_stabilizer(const ResourceGraph &g, int v) {
    const DimSpec &dim = g.dim;
    const int n = (int)g.vertices.size();
    const int iv = vertex_index(g, v);
    const GraphVertex &vx = g.vertices[iv];
    if (vx.amps || vx.z_label) throw Error(ErrorCode::InvalidArgument, "vertex is not initialized in D|0_X>");
    PauliWord w = site_word(dim, n, iv, 0, 1);
    std::vector<double> ph = vx.phases;
    if (!ph.empty()) {
        PauliWord one = conjugate_word(diag_phases(ph), make_word(dim, {0}, {1}));
        w.z[iv] = one.z[0];
        w.x[iv] = one.x[0];
        w = with_phase(w, one.phase_num);
    }
    for (const GraphEdge *e : seq_order(g)) {
        w = conjugate_sites(gate_matrix(e->gate), w, vertex_index(g, e->control), vertex_index(g, e->target));
    }
    return w;
}

namespace {

struct LocalFix {
    int x = 0;
    Mat diag;
};

// finds diagonal D_u and shifts c_u with post = prod_u (D_u X^{c_u}) target up to phase
std::optional<std::vector<LocalFix>> local_fix(const Vec &post, const Vec &target, int d, int n,
                                               const std::vector<int> &sites, const DimSpec &dim) {
    const long long total = post.size();
    const int m = (int)sites.size();
    long long combos = ipow(d, m);
    std::vector<int> digit(n);
    auto digits_of = [&](long long idx, std::vector<int> &dg) {
        for (int k = n - 1; k >= 0; k--) {
            dg[k] = (int)(idx % d);
            idx /= d;
        }
    };
    auto index_of = [&](const std::vector<int> &dg) {
        long long idx = 0;
        for (int k = 0; k < n; k++) idx = idx * d + dg[k];
        return idx;
    };
    std::vector<long long> stride(n);
    for (int k = 0; k < n; k++) stride[k] = ipow(d, n - 1 - k);
    Vec p = normalized_vec(post), t0 = normalized_vec(target);
    for (long long cc = 0; cc < combos; cc++) {
        std::vector<int> shift(n, 0);
        long long t = cc;
        for (int j = m - 1; j >= 0; j--) {
            shift[sites[j]] = (int)(t % d);
            t /= d;
        }
        // shifted target: (X^c T)(x) = T(x - c) over labels
        Vec tc(total);
        std::vector<int> dg(n);
        for (long long idx = 0; idx < total; idx++) {
            digits_of(idx, dg);
            for (int k = 0; k < n; k++) dg[k] = lab_sub(dim, dg[k], shift[k]);
            tc(idx) = t0(index_of(dg));
        }
        bool ok = true;
        std::vector<double> r(total);
        for (long long idx = 0; idx < total && ok; idx++) {
            double a = std::abs(p(idx)), b = std::abs(tc(idx));
            if (std::abs(a - b) > 1e-8) ok = false;
            r[idx] = (a > 1e-12) ? std::arg(p(idx) / tc(idx)) : 0;
        }
        if (!ok) continue;
        // additive separability of the phase ratio, anchored at a support point
        long long anchor = 0;
        while (anchor < total && std::abs(p(anchor)) < 1e-12) anchor++;
        if (anchor == total) continue;
        std::vector<int> a0(n);
        digits_of(anchor, a0);
        std::vector<std::vector<double>> fsite(n, std::vector<double>(d, 0.0));
        std::vector<std::vector<bool>> known(n, std::vector<bool>(d, false));
        for (int k = 0; k < n; k++) {
            for (int a = 0; a < d; a++) {
                std::vector<int> dg2 = a0;
                dg2[k] = a;
                long long idx = index_of(dg2);
                if (std::abs(p(idx)) > 1e-12) {
                    fsite[k][a] = r[idx] - r[anchor];
                    known[k][a] = true;
                }
            }
        }
        for (long long idx = 0; idx < total && ok; idx++) {
            if (std::abs(p(idx)) < 1e-12) continue;
            digits_of(idx, dg);
            double pred = r[anchor];
            for (int k = 0; k < n; k++) {
                if (!known[k][dg[k]]) {
                    ok = false;
                    break;
                }
                pred += fsite[k][dg[k]];
            }
            if (ok && std::abs(std::remainder(pred - r[idx], 2 * M_PI)) > 1e-8) ok = false;
        }
        if (!ok) continue;
        bool outside = false;
        for (int k = 0; k < n; k++) {
            bool in = std::find(sites.begin(), sites.end(), k) != sites.end();
            for (int a = 0; a < d && !in; a++) outside = outside || std::abs(std::remainder(fsite[k][a], 2 * M_PI)) > 1e-8;
        }
        if (outside) continue;
        std::vector<LocalFix> out;
        for (int k : sites) {
            LocalFix lf;
            lf.x = shift[k];
            lf.diag = Mat::Zero(d, d);
            for (int a = 0; a < d; a++) lf.diag(a, a) = std::polar(1.0, fsite[k][a]);
            out.push_back(lf);
        }
        (void)stride;
        return out;
    }
    return std::nullopt;
}

std::string diag_label(const DimSpec &dim, const Mat &dg) {
    for (int a = 0; a < dim.d; a++) {
        Mat s = shear_gate(dim, a);
        for (int b = 0; b < dim.d; b++) {
            if (equal_up_to_phase(dg, s * pauli_Z(dim, b), 1e-8)) {
                return "S^" + std::to_string(a) + " Z^" + std::to_string(b);
            }
        }
    }
    return "diag";
}

}  // namespace

RewriteResult local_complement(const ResourceGraph &g, int vertex, Rng &rng, std::optional<int> forced) {
    if (!all_diagonal(g)) throw Error(ErrorCode::InvalidArgument, "local complementation needs diagonal gates");
    const DimSpec &dim = g.dim;
    const int d = dim.d;
    std::vector<int> nb = neighbors(g, vertex);
    const GraphEdge *incident = nullptr;
    for (const auto &e : g.edges) {
        if (e.control == vertex || e.target == vertex) incident = &e;
    }
    int nexp = 0;
    if (incident) {
        DiagonalFactorization fac = factor_diagonal_clifford(incident->gate);
        if (fac.frobenius != 0) throw Error(ErrorCode::UnsupportedFormalism, "twisted CZ kernel");
        nexp = fac.n;
    }
    PauliWord gv = vertex_stabilizer(g, vertex);
    const int iv = vertex_index(g, vertex);
    int zv = gv.z[iv], xv = gv.x[iv];
    PauliWord obs = make_word(dim, {lab_add(dim, zv, lab_mul(dim, lab_int(dim, nexp), xv))}, {xv});
    Mat basis = pauli_eigenbasis(obs);
    StateVector s = build(g);
    MeasureResult m = measure(s, make_basis(d, basis, "LC"), iv, &rng, forced);
    RewriteResult r;
    r.posterior = m.post;
    r.outcome = m.outcome;
    ResourceGraph base = remove_vertex(g, vertex);
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < nb.size(); i++)
        for (size_t j = i + 1; j < nb.size(); j++) pairs.push_back({nb[i], nb[j]});
    std::vector<int> sites;
    for (int u : nb) sites.push_back(vertex_index(base, u));
    long long cands = ipow(d, (int)pairs.size());
    if (cands * ipow(d, (int)nb.size()) > 20000000) throw Error(ErrorCode::StateTooLarge, "correction search too large");
    int next_seq = 0;
    for (const auto &e : g.edges) next_seq = std::max(next_seq, e.seq + 1);
    for (long long c = 0; c < cands; c++) {
        // weight digits cycle 1, 2, ..., d-1, 0 so the plain complement is tried first
        ResourceGraph tg = base;
        long long t = c;
        int seq = next_seq;
        for (size_t i = 0; i < pairs.size(); i++) {
            int w = (int)((t % d + 1) % d);
            t /= d;
            if (w == 0) continue;
            EntanglingGateSpec gw = diagonal_gate(dim, incident->gate.theta * (double)w);
            gw.init_phases = incident->gate.init_phases;
            tg.edges.push_back({pairs[i].first, pairs[i].second, gw, seq++});
        }
        StateVector target = build(tg);
        auto fix = local_fix(r.posterior.amps, target.amps, d, target.n, sites, dim);
        if (!fix) continue;
        r.graph = tg;
        for (size_t i = 0; i < nb.size(); i++) {
            const LocalFix &lf = (*fix)[i];
            Mat op = (lf.diag * pauli_X(dim, lf.x)).adjoint();
            std::string label = "(" + diag_label(dim, lf.diag) + " X^" + std::to_string(lf.x) + ")^dag";
            r.corrections.push_back({nb[i], op, label});
        }
        StateVector fixed = apply_corrections(r.posterior, r.graph, r.corrections);
        r.fidelity = state_fidelity(fixed.amps, target.amps);
        return r;
    }
    throw Error(ErrorCode::FrameMismatch, "no local correction maps the posterior to a complemented graph");
}

}  // namespace qmbqc
