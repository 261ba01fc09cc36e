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

#include "qmbqc/qmbqc_c.h"

#include <cstring>
#include <string>

#include "qmbqc/commands.hpp"

using namespace qmbqc;

struct qmbqc_gate {
    EntanglingGateSpec spec;
    IntrinsicGate gi;
};

struct qmbqc_pattern {
    MeasurementPattern p;
    EntanglingGateSpec gate;
};

namespace {

thread_local std::string last_error;

qmbqc_status fail(qmbqc_status s, const std::string &msg) {
    last_error = msg;
    return s;
}

template <class F>
qmbqc_status guard(F &&f) {
    last_error.clear();
    try {
        f();
        return QMBQC_OK;
    } catch (const Error &e) {
        return fail((qmbqc_status)exit_code_for(e.code()), e.what());
    } catch (const std::exception &e) {
        return fail(QMBQC_ERR_FAILURE, e.what());
    }
}

char *dup_string(const std::string &s) {
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string formalism_of(const char *f) {
    return f ? std::string(f) : std::string("ring");
}

Mat read_matrix(const double *data, size_t len, int d) {
    if (!data || len != (size_t)(2 * d * d)) throw Error(ErrorCode::DimensionMismatch, "expected 2*d*d doubles");
    Mat m(d, d);
    for (int r = 0; r < d; r++)
        for (int c = 0; c < d; c++) m(r, c) = cplx(data[2 * (r * d + c)], data[2 * (r * d + c) + 1]);
    return m;
}

}  // namespace

extern "C" {

const char *qmbqc_version(void) {
    return kToolVersion;
}

const char *qmbqc_last_error(void) {
    return last_error.c_str();
}

void qmbqc_string_free(char *s) {
    delete[] s;
}

qmbqc_status qmbqc_gate_from_json(const char *json, const char *formalism, qmbqc_gate **out) {
    if (!json || !out) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    return guard([&] {
        auto g = std::make_unique<qmbqc_gate>();
        g->spec = gate_from_json(parse_json(json), formalism_of(formalism));
        g->gi = intrinsic_of(g->spec);
        *out = g.release();
    });
}

void qmbqc_gate_free(qmbqc_gate *g) {
    delete g;
}

int qmbqc_gate_dim(const qmbqc_gate *g) {
    return g ? g->spec.dim.d : 0;
}

qmbqc_status qmbqc_gate_intrinsic(const qmbqc_gate *g, double *out, size_t len) {
    if (!g || !out) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    const int d = g->spec.dim.d;
    if (len != (size_t)(2 * d * d)) return fail(QMBQC_ERR_ARGUMENT, "buffer must hold 2*d*d doubles");
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            out[2 * (r * d + c)] = g->gi.matrix(r, c).real();
            out[2 * (r * d + c) + 1] = g->gi.matrix(r, c).imag();
        }
    }
    return QMBQC_OK;
}

qmbqc_status qmbqc_gate_pauli_order(const qmbqc_gate *g, int *order) {
    if (!g || !order) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    *order = g->gi.pauli_order.value_or(0);
    return QMBQC_OK;
}

qmbqc_status qmbqc_compile(const qmbqc_gate *g, const double *target, size_t len, uint64_t seed, qmbqc_pattern **out) {
    if (!g || !out) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    return guard([&] {
        CompileOptions opt;
        opt.seed = seed;
        auto p = std::make_unique<qmbqc_pattern>();
        p->p = compile_unitary(read_matrix(target, len, g->spec.dim.d), g->gi, opt);
        p->gate = g->spec;
        *out = p.release();
    });
}

qmbqc_status qmbqc_transport(const qmbqc_gate *g, qmbqc_pattern **out) {
    if (!g || !out) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    return guard([&] {
        auto p = std::make_unique<qmbqc_pattern>();
        p->p = transport_pattern(g->gi);
        p->gate = g->spec;
        *out = p.release();
    });
}

void qmbqc_pattern_free(qmbqc_pattern *p) {
    delete p;
}

int qmbqc_pattern_length(const qmbqc_pattern *p) {
    return p ? (int)p->p.steps.size() : -1;
}

qmbqc_status qmbqc_pattern_to_json(const qmbqc_pattern *p, char **json) {
    if (!p || !json) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    return guard([&] { *json = dup_string(dump_json(pattern_to_json(p->p, p->gate))); });
}

qmbqc_status qmbqc_pattern_from_json(const char *json, const char *formalism, qmbqc_pattern **out) {
    if (!json || !out) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    return guard([&] {
        auto parsed = pattern_from_json(parse_json(json), formalism_of(formalism));
        auto p = std::make_unique<qmbqc_pattern>();
        p->p = parsed.first;
        p->gate = parsed.second;
        *out = p.release();
    });
}

qmbqc_status qmbqc_run_trials(const qmbqc_pattern *p, const double *input, size_t len, uint64_t seed, int trials,
                              int *failures, double *min_fidelity) {
    if (!p || !input || !failures || !min_fidelity) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    const int d = p->p.dim.d;
    if (len != (size_t)(2 * d)) return fail(QMBQC_ERR_ARGUMENT, "input must hold 2*d doubles");
    return guard([&] {
        Vec in(d);
        for (int k = 0; k < d; k++) in(k) = cplx(input[2 * k], input[2 * k + 1]);
        ResourceGraph chain = chain_graph(p->gate, (int)p->p.steps.size() + 1);
        TrialSummary s = run_trials(chain, p->p, in, seed, trials);
        *failures = s.failures;
        *min_fidelity = s.min_fidelity;
        if (s.failures) throw Error(ErrorCode::FrameMismatch, std::to_string(s.failures) + " trajectories failed");
    });
}

qmbqc_status qmbqc_command(const char *request, char **report) {
    if (!request || !report) return fail(QMBQC_ERR_ARGUMENT, "null argument");
    last_error.clear();
    CommandRequest req;
    CommandResult res;
    try {
        Json j = parse_json(request);
        if (!j.is_object() || !j.contains("command") || !j.at("command").is_string()) {
            throw Error(ErrorCode::ParseError, "request needs a string \"command\"");
        }
        req.command = j.at("command").get<std::string>();
        for (auto [k, dst] : {std::pair<const char *, Json *>{"gate", &req.gate},
                              {"target", &req.target},
                              {"graph", &req.graph},
                              {"pattern", &req.pattern}}) {
            if (j.contains(k)) *dst = j.at(k);
        }
        if (j.contains("formalism")) req.formalism = j.at("formalism").get<std::string>();
        if (j.contains("seed")) req.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) req.trials = j.at("trials").get<int>();
        if (j.contains("dump_state")) req.dump_state = j.at("dump_state").get<bool>();
        if (j.contains("threshold")) req.threshold = j.at("threshold").get<double>();
        if (j.contains("corrupt_row")) req.corrupt_row = j.at("corrupt_row").get<int>();
        res = run_command(req);
    } catch (const Error &e) {
        res.exit_code = exit_code_for(e.code());
        res.report = {{"error", {{"code", error_name(e.code())}, {"message", e.what()}}}};
    } catch (const std::exception &e) {
        res.exit_code = QMBQC_ERR_PARSE;
        res.report = {{"error", {{"code", "ParseError"}, {"message", e.what()}}}};
    }
    if (res.report.contains("error")) last_error = res.report["error"]["message"].get<std::string>();
    *report = dup_string(dump_json(res.report));
    return (qmbqc_status)res.exit_code;
}

}  // extern "C"
