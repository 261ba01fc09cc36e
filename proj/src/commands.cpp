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

#include "qmbqc/commands.hpp"

#include <cmath>

#include "qmbqc/gates.hpp"

namespace qmbqc {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return kExitParse;
        case ErrorCode::UnsupportedFormalism:
        case ErrorCode::NonPrimeCharacteristic:
        case ErrorCode::WrongFormalism: return kExitUnsupported;
        case ErrorCode::TableMismatch: return kExitTable;
        case ErrorCode::CompilationDiverged: return kExitDiverged;
        case ErrorCode::FrameMismatch: return kExitFrame;
        default: return kExitFailure;
    }
}

namespace {

Json inputs_of(const CommandRequest &r) {
    Json j;
    j["command"] = r.command;
    for (auto [k, v] : {std::pair<const char *, const Json *>{"gate", &r.gate},
                        {"target", &r.target},
                        {"graph", &r.graph},
                        {"pattern", &r.pattern}}) {
        if (!v->is_null()) j[k] = *v;
    }
    j["formalism"] = r.formalism;
    j["trials"] = r.trials;
    j["dump_state"] = r.dump_state;
    if (r.corrupt_row >= 0) j["corrupt_row"] = r.corrupt_row;
    if (r.command == "compile") j["threshold"] = r.threshold;
    return j;
}

Json report_head(const CommandRequest &r) {
    Json j;
    j["command"] = r.command;
    j["tool_version"] = kToolVersion;
    j["seed"] = r.seed;
    j["inputs_digest"] = sha256_hex(inputs_of(r).dump());
    return j;
}

const Json &require(const Json &j, const char *what) {
    if (j.is_null()) throw Error(ErrorCode::ParseError, std::string("missing --") + what);
    return j;
}

Json cert_json(const CliffordCert &c) {
    Json a = Json::array();
    for (size_t i = 0; i < c.generators.size(); i++) {
        a.push_back({{"pauli", word_to_json(c.generators[i])}, {"image", word_to_json(c.images[i])}});
    }
    return a;
}

Json analyze(const CommandRequest &req) {
    Json notes = Json::array();
    EntanglingGateSpec gate;
    const Json &gj = require(req.gate, "gate");
    try {
        gate = gate_from_json(gj, req.formalism);
    } catch (const Error &e) {
        // a light-shift without a maximally entangling angle is still analyzable at theta = pi
        if (e.code() != ErrorCode::NoRealSolution) throw;
        notes.push_back(e.what());
        Json g2 = gj;
        g2["theta"] = M_PI;
        gate = gate_from_json(g2, req.formalism);
        notes.push_back("analyzed at theta = pi");
    }
    IntrinsicGate gi = intrinsic_of(gate);
    Json r;
    r["gate"] = gate_to_json(gate);
    r["intrinsic"] = mat_to_json(gi.matrix);
    r["unitary"] = gi.unitary;
    r["max_entangled"] = is_max_entangled(make_state(gate.dim, resource_pair(gate)), {0});
    r["clifford"] = gi.cert.has_value();
    r["conjugation"] = gi.cert ? cert_json(*gi.cert) : Json();
    r["pauli_order"] = gi.pauli_order ? Json(*gi.pauli_order) : Json();
    if (gi.pauli_order) r["cost_bound"] = gate.dim.d * *gi.pauli_order;
    if (gi.cert) {
        UniversalityWitness w = universality_check(*gi.cert);
        r["universality"] = {{"universal", w.universal}, {"a", w.a}, {"b", w.b}};
    } else {
        r["universality"] = Json();
    }
    Json fac;
    try {
        if (gate.kind == GateKind::Diagonal) {
            DiagonalFactorization f = factor_diagonal_clifford(gate);
            fac = {{"kind", "diagonal_clifford"}, {"n", f.n}, {"frobenius", f.frobenius}, {"c1", mat_to_json(f.c1)},
                   {"c2", mat_to_json(f.c2)}};
        } else {
            ControlledPauliFactorization f = factor_block_controlled_pauli(gate);
            fac = {{"kind", "controlled_pauli"}, {"p", word_to_json(f.p)}, {"c1", mat_to_json(f.c1)},
                   {"c2", mat_to_json(f.c2)}};
        }
    } catch (const Error &e) {
        fac = {{"kind", "none"}, {"reason", e.what()}};
    }
    r["factorization"] = fac;
    r["notes"] = notes;
    return r;
}

Mat table_closed_form(const DimSpec &dim, const std::string &family) {
    Mat h = hadamard(dim), s = phase_gate(dim);
    if (family == "cz") return h;
    if (family == "cx") return dim.d == 2 ? Mat(s * h * s) : Mat(s * h.adjoint() * s);
    // light shift
    if (dim.d == 2) return s * h * s;
    if (dim.d == 3) return cplx(0, 1) * h * s * h.adjoint();
    Mat m = identity(dim.d);
    m(0, 0) = -1;
    return h * m * h;
}

}  // namespace

std::vector<TableRow> table_rows(int corrupt_row) {
    struct Spec {
        int d;
        const char *formalism, *family, *closed;
        int order, cost;
    };
    const std::vector<Spec> specs = {
        {2, "ring", "cz", "H", 2, 4},
        {2, "ring", "light_shift", "S H S", 2, 4},
        {2, "ring", "cx", "S H S", 2, 4},
        {3, "ring", "cz", "H_3", 4, 12},
        {3, "ring", "light_shift", "i H_3 S_3 H_3^-1", 3, 9},
        {3, "ring", "cx", "S_3 H_3^-1 S_3", 3, 9},
        {4, "field", "cz", "H_4^F", 2, 8},
        {4, "field", "light_shift", "H_4^F diag(-1,1,1,1) H_4^F", 2, 8},
        {4, "field", "cx", "S_4^F (H_4^F)^-1 S_4^F", 2, 8},
        {5, "field", "cx", "S^F(1) (H^F)^-1 S^F(1)", 5, 25},
        {5, "ring", "cx", "S_5 H_5^-1 S_5", 5, 25},
    };
    std::vector<TableRow> rows;
    for (size_t i = 0; i < specs.size(); i++) {
        const Spec &sp = specs[i];
        DimSpec dim = dim_for(sp.d, sp.formalism);
        std::string fam = sp.family;
        EntanglingGateSpec gate = fam == "cz"   ? named_cz(dim)
                                  : fam == "cx" ? named_cx(dim)
                                                : named_light_shift(dim, light_shift_angle(sp.d));
        Mat g = intrinsic_of(gate).matrix;
        TableRow r;
        r.d = sp.d;
        r.formalism = sp.formalism;
        r.family = fam;
        r.closed_form = sp.closed;
        r.expected_order = sp.order + ((int)i == corrupt_row ? 1 : 0);
        r.expected_cost = sp.cost;
        r.order = pauli_order(g, dim);
        r.cost = sp.d * r.order;
        r.distance = dist_up_to_phase(g, table_closed_form(dim, fam));
        r.match = r.distance < 1e-8 && r.order == r.expected_order && r.cost == r.expected_cost;
        rows.push_back(r);
    }
    return rows;
}

namespace {

Json table(const CommandRequest &req, bool *ok) {
    Json rows = Json::array();
    *ok = true;
    for (const TableRow &r : table_rows(req.corrupt_row)) {
        rows.push_back({{"d", r.d},
                        {"formalism", r.formalism},
                        {"gate", r.family},
                        {"intrinsic", r.closed_form},
                        {"distance", r.distance},
                        {"pauli_order", r.order},
                        {"expected_pauli_order", r.expected_order},
                        {"cost_bound", r.cost},
                        {"expected_cost_bound", r.expected_cost},
                        {"match", r.match}});
        *ok = *ok && r.match;
    }
    return {{"rows", rows}, {"all_match", *ok}};
}

Mat target_matrix(const Json &t) {
    if (t.is_object()) {
        if (!t.contains("matrix")) throw Error(ErrorCode::ParseError, "target needs \"matrix\"");
        return mat_from_json(t.at("matrix"));
    }
    return mat_from_json(t);
}

Json compile(const CommandRequest &req) {
    EntanglingGateSpec gate = gate_from_json(require(req.gate, "gate"), req.formalism);
    Mat u = target_matrix(require(req.target, "target"));
    if (u.rows() != gate.dim.d) throw Error(ErrorCode::DimensionMismatch, "target size differs from the gate dimension");
    if (!is_unitary(u, 1e-8)) throw Error(ErrorCode::NonUnitary, "target is not unitary");
    IntrinsicGate gi = intrinsic_of(gate);
    MeasurementPattern p;
    std::string method = "als";
    if (gi.cert && conjugation_table(u, gate.dim).clifford) {
        p = compile_clifford(u, gi);
        method = "clifford";
    } else {
        CompileOptions opt;
        opt.seed = req.seed;
        opt.threshold = req.threshold;
        p = compile_unitary(u, gi, opt);
    }
    Json r;
    r["method"] = method;
    r["length"] = p.steps.size();
    r["residual"] = pattern_residual(p, u);
    if (gi.pauli_order) r["cost_bound"] = gate.dim.d * *gi.pauli_order;
    r["pattern"] = pattern_to_json(p, gate);
    return r;
}

// accepts a pattern document or a compile/transport report
const Json &pattern_doc(const Json &j) {
    if (j.contains("results") && j.at("results").contains("pattern")) return j.at("results").at("pattern");
    return j;
}

Json run(const CommandRequest &req, bool *frame_ok) {
    auto [p, gate] = pattern_from_json(pattern_doc(require(req.pattern, "pattern")), req.formalism);
    ResourceGraph chain = req.graph.is_null() ? chain_graph(gate, (int)p.steps.size() + 1)
                                              : graph_from_json(req.graph, req.formalism);
    if (req.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    Rng rng(req.seed);
    Vec input = haar_unitary(p.dim.d, rng).col(0);
    TrialSummary s = run_trials(chain, p, input, req.seed, req.trials);
    Json r;
    r["length"] = p.steps.size();
    r["input"] = vec_to_json(input);
    r["trials"] = s.trials;
    r["failures"] = s.failures;
    r["min_fidelity"] = s.min_fidelity;
    *frame_ok = s.failures == 0;
    if (req.dump_state) {
        Rng one(req.seed);
        RunOptions opt;
        opt.min_fidelity = 0;
        RunResult rr = run_pattern(chain, p, input, one, opt);
        Json hist = Json::array();
        for (auto [step, k] : rr.frame.history) hist.push_back({step, k});
        r["trajectory"] = {{"history", hist},
                           {"frame", word_to_json(rr.frame.frames[0])},
                           {"fidelity", rr.fidelity},
                           {"state", state_to_json(make_state(p.dim, rr.output))}};
    }
    return r;
}

Json transport(const CommandRequest &req, bool *frame_ok) {
    EntanglingGateSpec gate = gate_from_json(require(req.gate, "gate"), req.formalism);
    MeasurementPattern p = transport_pattern(intrinsic_of(gate));
    Rng rng(req.seed);
    Vec input = haar_unitary(gate.dim.d, rng).col(0);
    TrialSummary s = run_trials(chain_graph(gate, (int)p.steps.size() + 1), p, input, req.seed, std::max(1, req.trials));
    *frame_ok = s.failures == 0;
    Json r;
    r["length"] = p.steps.size();
    r["trials"] = s.trials;
    r["failures"] = s.failures;
    r["min_fidelity"] = s.min_fidelity;
    r["pattern"] = pattern_to_json(p, gate);
    return r;
}

}  // namespace

CommandResult run_command(const CommandRequest &req) {
    CommandResult out;
    try {
        out.report = report_head(req);
        bool ok = true;
        if (req.command == "analyze") {
            out.report["results"] = analyze(req);
        } else if (req.command == "table") {
            out.report["results"] = table(req, &ok);
            if (!ok) out.exit_code = kExitTable;
        } else if (req.command == "compile") {
            out.report["results"] = compile(req);
        } else if (req.command == "run") {
            out.report["results"] = run(req, &ok);
            if (!ok) out.exit_code = kExitFrame;
        } else if (req.command == "transport") {
            out.report["results"] = transport(req, &ok);
            if (!ok) out.exit_code = kExitFrame;
        } else {
            throw Error(ErrorCode::ParseError, "unknown command " + req.command);
        }
    } catch (const Error &e) {
        out.exit_code = exit_code_for(e.code());
        out.report["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
    } catch (const std::exception &e) {
        out.exit_code = kExitFailure;
        out.report["error"] = {{"code", "Internal"}, {"message", e.what()}};
    }
    return out;
}

}  // namespace qmbqc
