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

#include "qmbqc/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>

#include "qmbqc/gates.hpp"

namespace qmbqc {

namespace {

[[noreturn]] void bad(const std::string &what) {
    throw Error(ErrorCode::ParseError, what);
}

const Json &need(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

int as_int(const Json &j, const char *what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

double as_double(const Json &j, const char *what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

std::vector<double> doubles(const Json &j, const char *what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto &x : j) out.push_back(as_double(x, what));
    return out;
}

std::vector<int> ints(const Json &j, const char *what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto &x : j) out.push_back(as_int(x, what));
    return out;
}

Json doubles_json(const std::vector<double> &v) {
    Json a = Json::array();
    for (double x : v) a.push_back(x);
    return a;
}

Json label_json(const DimSpec &dim, int label) {
    if (!dim.is_field() || dim.m == 1) return label;
    return elem_of(dim, label).coeffs;
}

int label_from(const DimSpec &dim, const Json &j) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        if (v < 0 || v >= dim.d) bad("label out of range");
        return v;
    }
    if (!dim.is_field()) bad("ring labels are integers");
    std::vector<int> c = ints(j, "field element");
    if ((int)c.size() > dim.m) bad("field element has too many coefficients");
    c.resize(dim.m, 0);
    for (int x : c)
        if (x < 0 || x >= dim.p) bad("field coefficient out of range");
    return label_of(dim, FieldElem{c});
}

std::pair<int, int> prime_power(int d) {
    for (int p = 2; p <= d; p++) {
        if (d % p) continue;
        int m = 0, t = d;
        while (t % p == 0) {
            t /= p;
            m++;
        }
        if (t != 1) return {0, 0};
        return {p, m};
    }
    return {0, 0};
}

DimSpec infer_dim(const Json &j, int d, const std::string &formalism) {
    if (j.contains("dim")) return dim_from_json(j.at("dim"));
    if (d <= 1) bad("cannot infer the dimension");
    return dim_for(d, formalism);
}

template <class F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception &e) {
        bad(e.what());
    }
}

}  // namespace

DimSpec dim_for(int d, const std::string &formalism) {
    if (formalism == "ring") return make_ring(d);
    if (formalism != "field") bad("formalism must be ring or field");
    auto [p, m] = prime_power(d);
    if (!p) throw Error(ErrorCode::UnsupportedFormalism, std::to_string(d) + " is not a prime power");
    return make_field(p, m);
}

Json dim_to_json(const DimSpec &dim) {
    Json j;
    if (dim.is_field()) {
        j["kind"] = "finite_field";
        j["p"] = dim.p;
        j["m"] = dim.m;
        j["poly"] = dim.poly;
        if (!dim.gr_poly.empty()) j["gr_poly"] = dim.gr_poly;
    } else {
        j["kind"] = "integer_ring";
        j["d"] = dim.d;
    }
    return j;
}

DimSpec dim_from_json(const Json &j) {
    std::string kind = guarded([&] { return need(j, "kind").get<std::string>(); });
    if (kind == "integer_ring") return make_ring(as_int(need(j, "d"), "d"));
    if (kind == "finite_field") {
        std::vector<int> poly, gr;
        if (j.contains("poly")) poly = ints(j.at("poly"), "poly");
        if (j.contains("gr_poly")) gr = ints(j.at("gr_poly"), "gr_poly");
        return make_field(as_int(need(j, "p"), "p"), as_int(need(j, "m"), "m"), poly, gr);
    }
    bad("unknown dim kind " + kind);
}

Json cplx_to_json(cplx z) {
    return Json::array({z.real(), z.imag()});
}

cplx cplx_from_json(const Json &j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2) bad("complex numbers are [re, im]");
    return {as_double(j[0], "re"), as_double(j[1], "im")};
}

Json vec_to_json(const Vec &v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); i++) a.push_back(cplx_to_json(v(i)));
    return a;
}

Vec vec_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) bad("vector must be a non-empty array");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); i++) v(i) = cplx_from_json(j[i]);
    return v;
}

Json mat_to_json(const Mat &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) row.push_back(cplx_to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
    const size_t n = j.size();
    Mat m(n, n);
    for (size_t r = 0; r < n; r++) {
        if (!j[r].is_array() || j[r].size() != n) bad("matrix must be square");
        for (size_t c = 0; c < n; c++) m(r, c) = cplx_from_json(j[r][c]);
    }
    return m;
}

Json word_to_json(const PauliWord &w) {
    Json j;
    j["phase"] = Json::array({w.phase_num, w.phase_den});
    Json z = Json::array(), x = Json::array();
    for (int i = 0; i < w.n; i++) {
        z.push_back(label_json(w.dim, w.z[i]));
        x.push_back(label_json(w.dim, w.x[i]));
    }
    j["z"] = z;
    j["x"] = x;
    return j;
}

PauliWord word_from_json(const DimSpec &dim, const Json &j) {
    const Json &z = need(j, "z"), &x = need(j, "x");
    if (!z.is_array() || !x.is_array() || z.size() != x.size() || z.empty()) bad("z and x must be equal-length arrays");
    std::vector<int> zs, xs;
    for (size_t i = 0; i < z.size(); i++) {
        zs.push_back(label_from(dim, z[i]));
        xs.push_back(label_from(dim, x[i]));
    }
    PauliWord w = make_word(dim, zs, xs);
    if (j.contains("phase")) {
        std::vector<int> ph = ints(j.at("phase"), "phase");
        if (ph.size() != 2 || ph[1] <= 0 || w.phase_den % ph[1]) bad("phase must be [num, den] dividing the phase grid");
        w = with_phase(w, ph[0] * (w.phase_den / ph[1]));
    }
    return w;
}

Json gate_to_json(const EntanglingGateSpec &g) {
    Json j;
    if (!g.name.empty()) {
        j["kind"] = "named";
        j["name"] = g.name;
        if (g.name == "light_shift") j["theta"] = g.named_theta;
    } else if (g.kind == GateKind::Diagonal) {
        j["kind"] = "diagonal";
        Json th = Json::array();
        for (int r = 0; r < g.dim.d; r++) {
            Json row = Json::array();
            for (int c = 0; c < g.dim.d; c++) row.push_back(g.theta(r, c));
            th.push_back(row);
        }
        j["theta"] = th;
        j["init_phases"] = doubles_json(g.init_phases);
    } else {
        j["kind"] = "block_diagonal";
        Json bs = Json::array();
        for (const auto &b : g.blocks) bs.push_back(mat_to_json(b));
        j["blocks"] = bs;
        j["init_phases"] = doubles_json(g.init_phases);
    }
    j["dim"] = dim_to_json(g.dim);
    return j;
}

EntanglingGateSpec gate_from_json(const Json &j, const std::string &formalism) {
    return guarded([&]() -> EntanglingGateSpec {
        std::string kind = need(j, "kind").get<std::string>();
        if (kind == "named") {
            std::string name = need(j, "name").get<std::string>();
            int d = j.contains("d") ? as_int(j.at("d"), "d") : 0;
            DimSpec dim = infer_dim(j, d, formalism);
            if (name == "cz") return named_cz(dim);
            if (name == "cx") return named_cx(dim);
            if (name == "light_shift") {
                double th = j.contains("theta") ? as_double(j.at("theta"), "theta") : light_shift_angle(dim.d);
                return named_light_shift(dim, th);
            }
            bad("unknown gate name " + name);
        }
        if (kind == "diagonal") {
            const Json &th = need(j, "theta");
            if (!th.is_array() || th.empty()) bad("theta must be a d x d array");
            const int d = (int)th.size();
            DimSpec dim = infer_dim(j, d, formalism);
            if (dim.d != d) throw Error(ErrorCode::DimensionMismatch, "theta size does not match dim");
            Eigen::MatrixXd t(d, d);
            for (int r = 0; r < d; r++) {
                std::vector<double> row = doubles(th[r], "theta row");
                if ((int)row.size() != d) bad("theta must be square");
                for (int c = 0; c < d; c++) t(r, c) = row[c];
            }
            EntanglingGateSpec g = diagonal_gate(dim, t);
            if (j.contains("init_phases")) {
                g.init_phases = doubles(j.at("init_phases"), "init_phases");
                if ((int)g.init_phases.size() != d) throw Error(ErrorCode::DimensionMismatch, "need d init phases");
            }
            return g;
        }
        if (kind == "block_diagonal") {
            const Json &bs = need(j, "blocks");
            if (!bs.is_array() || bs.empty()) bad("blocks must be a non-empty array");
            DimSpec dim = infer_dim(j, (int)bs.size(), formalism);
            std::vector<Mat> blocks;
            for (const auto &b : bs) blocks.push_back(mat_from_json(b));
            std::vector<double> ph(dim.d, 0.0);
            if (j.contains("init_phases")) ph = doubles(j.at("init_phases"), "init_phases");
            return block_gate(dim, blocks, ph);
        }
        bad("unknown gate kind " + kind);
    });
}

Json pattern_to_json(const MeasurementPattern &p, const EntanglingGateSpec &gate) {
    Json j;
    j["dim"] = dim_to_json(p.dim);
    j["intrinsic"] = gate_to_json(gate);
    j["intrinsic_matrix"] = mat_to_json(p.intrinsic.matrix);
    Json steps = Json::array();
    for (const auto &s : p.steps) {
        Json st;
        st["phases"] = doubles_json(s.phases);
        st["adaptive"] = s.adaptive;
        steps.push_back(st);
    }
    j["steps"] = steps;
    j["step_order"] = "index 0 acts first";
    j["frame"] = word_to_json(p.frame);
    j["frame_semantics"] = "left";
    return j;
}

std::pair<MeasurementPattern, EntanglingGateSpec> pattern_from_json(const Json &j, const std::string &formalism) {
    return guarded([&] {
        const Json &gi = need(j, "intrinsic");
        if (!gi.is_object()) bad("intrinsic must be a gate spec object");
        Json gj = gi;
        if (!gj.contains("dim") && j.contains("dim")) gj["dim"] = j.at("dim");
        EntanglingGateSpec gate = gate_from_json(gj, formalism);
        if (j.contains("frame_semantics") && j.at("frame_semantics") != "left") bad("only left frame semantics is supported");
        MeasurementPattern p;
        p.dim = gate.dim;
        p.intrinsic = intrinsic_of(gate);
        if (j.contains("intrinsic_matrix") && !equal_up_to_phase(mat_from_json(j.at("intrinsic_matrix")), p.intrinsic.matrix, 1e-8)) {
            bad("intrinsic_matrix does not match the gate spec");
        }
        const Json &steps = need(j, "steps");
        if (!steps.is_array()) bad("steps must be an array");
        for (const auto &s : steps) {
            PatternStep st;
            st.phases = doubles(need(s, "phases"), "phases");
            if ((int)st.phases.size() != p.dim.d) bad("each step needs d phases");
            if (s.contains("adaptive")) {
                if (!s.at("adaptive").is_boolean()) bad("adaptive must be a boolean");
                st.adaptive = s.at("adaptive").get<bool>();
            }
            p.steps.push_back(st);
        }
        p.frame = j.contains("frame") ? word_from_json(p.dim, j.at("frame")) : identity_word(p.dim, 1);
        return std::make_pair(p, gate);
    });
}

Json graph_to_json(const ResourceGraph &g) {
    Json j;
    j["dim"] = dim_to_json(g.dim);
    Json vs = Json::array();
    for (const auto &v : g.vertices) {
        Json vj;
        vj["id"] = v.id;
        if (v.amps) {
            vj["amps"] = vec_to_json(*v.amps);
        } else if (v.z_label) {
            vj["z"] = label_json(g.dim, *v.z_label);
        } else {
            vj["init"] = doubles_json(v.phases);
        }
        vs.push_back(vj);
    }
    j["vertices"] = vs;
    Json es = Json::array();
    for (const auto &e : g.edges) {
        Json ej;
        ej["c"] = e.control;
        ej["t"] = e.target;
        if (!e.gate.name.empty()) {
            ej["gate"] = e.gate.name;
            if (e.gate.name == "light_shift") ej["gate"] = gate_to_json(e.gate);
        } else {
            ej["gate"] = gate_to_json(e.gate);
        }
        ej["seq"] = e.seq;
        es.push_back(ej);
    }
    j["edges"] = es;
    return j;
}

ResourceGraph graph_from_json(const Json &j, const std::string &formalism) {
    return guarded([&] {
        ResourceGraph g;
        const Json &vs = need(j, "vertices");
        const Json &es = need(j, "edges");
        if (!vs.is_array() || !es.is_array()) bad("vertices and edges must be arrays");
        std::optional<DimSpec> dim;
        if (j.contains("dim")) dim = dim_from_json(j.at("dim"));
        auto resolve = [&](const Json &gj) -> EntanglingGateSpec {
            if (gj.is_string()) {
                std::string name = gj.get<std::string>();
                if (j.contains("gates") && j.at("gates").contains(name)) {
                    Json spec = j.at("gates").at(name);
                    if (dim && !spec.contains("dim")) spec["dim"] = dim_to_json(*dim);
                    return gate_from_json(spec, formalism);
                }
                if (!dim) bad("named edge gates need a graph dim");
                Json spec{{"kind", "named"}, {"name", name}, {"dim", dim_to_json(*dim)}};
                return gate_from_json(spec, formalism);
            }
            Json spec = gj;
            if (dim && !spec.contains("dim")) spec["dim"] = dim_to_json(*dim);
            return gate_from_json(spec, formalism);
        };
        for (const auto &e : es) {
            GraphEdge ge;
            ge.control = as_int(need(e, "c"), "c");
            ge.target = as_int(need(e, "t"), "t");
            ge.gate = resolve(need(e, "gate"));
            ge.seq = e.contains("seq") ? as_int(e.at("seq"), "seq") : (int)g.edges.size();
            if (!dim) dim = ge.gate.dim;
            if (ge.gate.dim != *dim) throw Error(ErrorCode::DimensionMismatch, "edge gates disagree on the dimension");
            g.edges.push_back(ge);
        }
        if (!dim) bad("graph without edges needs a dim");
        g.dim = *dim;
        for (const auto &v : vs) {
            GraphVertex gv;
            gv.id = as_int(need(v, "id"), "id");
            if (v.contains("init")) gv.phases = doubles(v.at("init"), "init");
            if (v.contains("z")) gv.z_label = label_from(g.dim, v.at("z"));
            if (v.contains("amps")) gv.amps = vec_from_json(v.at("amps"));
            for (const auto &o : g.vertices)
                if (o.id == gv.id) bad("duplicate vertex id");
            g.vertices.push_back(gv);
        }
        for (const auto &e : g.edges) {
            vertex_index(g, e.control);
            vertex_index(g, e.target);
        }
        return g;
    });
}

Json state_to_json(const StateVector &s) {
    Json j;
    j["dim"] = dim_to_json(s.dim);
    j["n"] = s.n;
    j["amplitudes"] = vec_to_json(s.amps);
    return j;
}

std::string sha256_hex(const std::string &data) {
    unsigned char out[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), out, &len, EVP_sha256(), nullptr)) {
        throw Error(ErrorCode::InvalidArgument, "sha256 failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; i++) {
        std::snprintf(buf, sizeof buf, "%02x", out[i]);
        hex += buf;
    }
    return hex;
}

std::string dump_json(const Json &j) {
    return j.dump(2) + "\n";
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception &e) {
        bad(e.what());
    }
}

}  // namespace qmbqc
