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

#include "doctest.h"
#include "qmbqc/commands.hpp"
#include "qmbqc/gates.hpp"

using namespace qmbqc;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("dimension specs round-trip") {
    for (DimSpec dim : {make_ring(3), make_ring(6), make_field(2, 2), make_field(3, 2), make_field(2, 3)}) {
        DimSpec back = dim_from_json(parse_json(dim_to_json(dim).dump()));
        CHECK(back == dim);
    }
    Json f4 = parse_json(R"({"kind":"finite_field","p":2,"m":2,"poly":[1,1,1]})");
    CHECK(dim_from_json(f4).d == 4);
    CHECK(code_of([] { dim_from_json(parse_json(R"({"kind":"octonions"})")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { dim_from_json(parse_json(R"({"kind":"integer_ring"})")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { dim_for(6, "field"); }) == ErrorCode::UnsupportedFormalism);
}

TEST_CASE("Pauli words round-trip with field coefficient arrays") {
    DimSpec f4 = make_field(2, 2);
    PauliWord w = with_phase(make_word(f4, {2, 3}, {1, 0}), 3);
    Json j = word_to_json(w);
    CHECK(j["z"][0].is_array());
    CHECK(word_from_json(f4, j) == w);
    DimSpec d5 = make_ring(5);
    PauliWord v = make_word(d5, {4}, {2}, 7);
    CHECK(word_to_json(v)["z"][0] == 4);
    CHECK(word_from_json(d5, word_to_json(v)) == v);
    CHECK(code_of([&] { word_from_json(d5, parse_json(R"({"z":[5],"x":[0]})")); }) == ErrorCode::ParseError);
}

TEST_CASE("gate specs round-trip") {
    for (DimSpec dim : {make_ring(2), make_ring(3), make_field(2, 2)}) {
        for (const auto &g : {named_cz(dim), named_cx(dim), named_light_shift(dim, light_shift_angle(dim.d))}) {
            EntanglingGateSpec back = gate_from_json(parse_json(gate_to_json(g).dump()));
            CHECK(max_abs(gate_matrix(back) - gate_matrix(g)) < 1e-15);
            CHECK(back.init_phases == g.init_phases);
        }
        Eigen::MatrixXd th = Eigen::MatrixXd::Random(dim.d, dim.d);
        EntanglingGateSpec dg = diagonal_gate(dim, th);
        EntanglingGateSpec back = gate_from_json(parse_json(gate_to_json(dg).dump()));
        CHECK(max_abs(gate_matrix(back) - gate_matrix(dg)) == 0);
        EntanglingGateSpec bg = named_cx(dim);
        bg.name.clear();
        back = gate_from_json(parse_json(gate_to_json(bg).dump()));
        CHECK(back.kind == GateKind::BlockDiagonal);
        CHECK(max_abs(gate_matrix(back) - gate_matrix(bg)) == 0);
    }
    // the dimension is inferred when absent
    EntanglingGateSpec g = gate_from_json(parse_json(R"({"kind":"diagonal","theta":[[0,0],[0,3.141592653589793]]})"));
    CHECK(g.dim.d == 2);
    EntanglingGateSpec f = gate_from_json(parse_json(R"({"kind":"named","name":"cz","d":4})"), "field");
    CHECK(f.dim.is_field());
    CHECK(code_of([] { gate_from_json(parse_json(R"({"kind":"named","name":"swap","d":2})")); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { gate_from_json(parse_json(R"({"kind":"diagonal","theta":[[0,"a"],[0,0]]})")); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { gate_from_json(parse_json(R"({"kind":"named","name":"light_shift","d":5})")); }) ==
          ErrorCode::NoRealSolution);
}

TEST_CASE("patterns round-trip") {
    DimSpec dim = make_ring(3);
    EntanglingGateSpec gate = named_light_shift(dim, light_shift_angle(3));
    Rng rng(3);
    MeasurementPattern p = compile_unitary(haar_unitary(3, rng), intrinsic_of(gate));
    Json j = pattern_to_json(p, gate);
    CHECK(j["frame_semantics"] == "left");
    auto [q, g2] = pattern_from_json(parse_json(dump_json(j)));
    REQUIRE(q.steps.size() == p.steps.size());
    for (size_t i = 0; i < p.steps.size(); i++) {
        CHECK(q.steps[i].phases == p.steps[i].phases);
        CHECK(q.steps[i].adaptive == p.steps[i].adaptive);
    }
    CHECK(q.frame == p.frame);
    CHECK(max_abs(pattern_unitary(q) - pattern_unitary(p)) == 0);
    Json bad = j;
    bad["frame_semantics"] = "right";
    CHECK(code_of([&] { pattern_from_json(bad); }) == ErrorCode::ParseError);
    bad = j;
    bad["steps"][0]["phases"] = {0.0, 1.0};
    CHECK(code_of([&] { pattern_from_json(bad); }) == ErrorCode::ParseError);
}

TEST_CASE("graphs round-trip") {
    DimSpec dim = make_ring(3);
    ResourceGraph g = lattice_diagonal(named_light_shift(dim, light_shift_angle(3)), 2, 2);
    g.vertices[1].z_label = 2;
    g.vertices[2].phases = {0.1, 0.2, 0.3};
    ResourceGraph back = graph_from_json(parse_json(dump_json(graph_to_json(g))));
    CHECK((build(back).amps - build(g).amps).norm() == 0);
    Json spec = parse_json(R"({"dim":{"kind":"integer_ring","d":2},
        "vertices":[{"id":0,"init":[0,0]},{"id":1}],
        "edges":[{"c":0,"t":1,"gate":"cz","seq":0}]})");
    ResourceGraph two = graph_from_json(spec);
    CHECK((build(two).amps - build(chain_graph(named_cz(make_ring(2)), 2)).amps).norm() < 1e-15);
    spec["edges"][0]["t"] = 9;
    CHECK_THROWS_AS(graph_from_json(spec), Error);
}

TEST_CASE("sha256 matches a known digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reports are reproducible") {
    CommandRequest req;
    req.command = "transport";
    req.gate = parse_json(R"({"kind":"named","name":"cx","d":3})");
    req.seed = 9;
    req.trials = 20;
    CommandResult a = run_command(req), b = run_command(req);
    CHECK(a.exit_code == 0);
    CHECK(dump_json(a.report) == dump_json(b.report));
    req.seed = 10;
    CHECK(run_command(req).report["inputs_digest"] == a.report["inputs_digest"]);
    req.trials = 21;
    CHECK(run_command(req).report["inputs_digest"] != a.report["inputs_digest"]);
}

TEST_CASE("command exit codes") {
    CommandRequest req;
    req.command = "analyze";
    CHECK(run_command(req).exit_code == kExitParse);
    req.gate = parse_json(R"({"kind":"named","name":"cz","d":6})");
    req.formalism = "field";
    CHECK(run_command(req).exit_code == kExitUnsupported);
    req.command = "table";
    req.corrupt_row = 4;
    CHECK(run_command(req).exit_code == kExitTable);
    req.corrupt_row = -1;
    CHECK(run_command(req).exit_code == kExitOk);
    req.command = "frobnicate";
    CHECK(run_command(req).exit_code == kExitParse);
    // not reachable from valid inputs, so only the mapping is checked
    CHECK(exit_code_for(ErrorCode::FrameMismatch) == kExitFrame);
    CHECK(exit_code_for(ErrorCode::CompilationDiverged) == kExitDiverged);
    CHECK(exit_code_for(ErrorCode::TableMismatch) == kExitTable);
    CHECK(exit_code_for(ErrorCode::WrongFormalism) == kExitUnsupported);
    CHECK(exit_code_for(ErrorCode::NotClifford) == kExitFailure);
}

TEST_CASE("analyze reports") {
    CommandRequest req;
    req.command = "analyze";
    req.gate = parse_json(R"({"kind":"named","name":"light_shift","d":3})");
    Json r = run_command(req).report["results"];
    CHECK(r["pauli_order"] == 3);
    CHECK(r["unitary"] == true);
    CHECK(r["max_entangled"] == true);
    CHECK(r["factorization"]["kind"] == "diagonal_clifford");
    req.gate = parse_json(R"({"kind":"named","name":"cz","d":2})");
    r = run_command(req).report["results"];
    CHECK(r["pauli_order"] == 2);
    CHECK(equal_up_to_phase(mat_from_json(r["intrinsic"]), hadamard(make_ring(2))));
    req.gate = parse_json(R"({"kind":"named","name":"light_shift","d":5})");
    CommandResult c = run_command(req);
    CHECK(c.exit_code == 0);
    CHECK(c.report["results"]["max_entangled"] == false);
    CHECK(c.report["results"]["notes"][0].get<std::string>().find("NoRealSolution") != std::string::npos);
}

TEST_CASE("compile then run verifies on 100 seeds") {
    Rng rng(8);
    for (const char *gate : {R"({"kind":"named","name":"cz","d":3})", R"({"kind":"named","name":"cx","d":2})",
                             R"({"kind":"named","name":"light_shift","d":4})"}) {
        CommandRequest c;
        c.command = "compile";
        c.gate = parse_json(gate);
        c.formalism = "field";
        int d = c.gate["d"];
        c.target = mat_to_json(haar_unitary(d, rng));
        CommandResult comp = run_command(c);
        REQUIRE(comp.exit_code == 0);
        CHECK(comp.report["results"]["residual"].get<double>() < 1e-6);
        CommandRequest r;
        r.command = "run";
        r.formalism = "field";
        r.pattern = parse_json(dump_json(comp.report));
        r.trials = 100;
        r.seed = 5;
        CommandResult run = run_command(r);
        CHECK(run.exit_code == 0);
        CHECK(run.report["results"]["failures"] == 0);
    }
    // a Clifford target takes the single-time-step route
    CommandRequest c;
    c.command = "compile";
    c.gate = parse_json(R"({"kind":"named","name":"cz","d":3})");
    c.target = mat_to_json(phase_gate(make_ring(3)));
    Json res = run_command(c).report["results"];
    CHECK(res["method"] == "clifford");
    for (const auto &s : res["pattern"]["steps"]) CHECK(s["adaptive"] == false);
}

TEST_CASE("compile failures") {
    CommandRequest c;
    c.command = "compile";
    c.gate = parse_json(R"({"kind":"diagonal","theta":[[0,0.3],[0.3,0]]})");
    c.target = mat_to_json(hadamard(make_ring(2)));
    CommandResult r = run_command(c);
    CHECK(r.exit_code == kExitFailure);
    CHECK(r.report["error"]["code"] == "NotClifford");
    // nothing reaches a negative residual
    Rng rng(2);
    c.gate = parse_json(R"({"kind":"named","name":"cz","d":3})");
    c.target = mat_to_json(haar_unitary(3, rng));
    c.threshold = -1;
    r = run_command(c);
    CHECK(r.exit_code == kExitDiverged);
    CHECK(r.report["error"]["code"] == "CompilationDiverged");
}

TEST_CASE("run with a state dump") {
    CommandRequest t;
    t.command = "transport";
    t.gate = parse_json(R"({"kind":"named","name":"cz","d":2})");
    CommandResult tr = run_command(t);
    CommandRequest r;
    r.command = "run";
    r.pattern = tr.report;
    r.dump_state = true;
    r.seed = 3;
    Json res = run_command(r).report["results"];
    CHECK(res["trajectory"]["state"]["amplitudes"].size() == 2);
    CHECK(res["trajectory"]["fidelity"].get<double>() > 1 - 1e-12);
}
