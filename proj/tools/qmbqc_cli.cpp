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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmbqc/qmbqc_c.h"

using Json = nlohmann::ordered_json;

namespace {

struct Args {
    std::string gate, target, graph, pattern, out;
    std::string formalism = "ring";
    std::uint64_t seed = 1;
    int trials = 1;
    bool dump_state = false;
    int corrupt_row = -1;
    double threshold = 1e-6;
};

int emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f) return 1;
    f << text;
    return 0;
}

int parse_failure(const std::string &msg, const std::string &out) {
    Json j = {{"error", {{"code", "ParseError"}, {"message", msg}}}};
    emit(j.dump(2) + "\n", out);
    std::cerr << "qmbqc: " << msg << "\n";
    return QMBQC_ERR_PARSE;
}

Json load(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const Json::exception &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qudit MBQC resource analysis, compilation and simulation"};
    app.require_subcommand(1, 1);
    Args a;
    auto common = [&](CLI::App *s) {
        s->add_option("--formalism", a.formalism, "ring or field")->check(CLI::IsMember({"ring", "field"}));
        s->add_option("--seed", a.seed, "RNG seed");
        s->add_option("--out", a.out, "write the report here instead of stdout");
    };
    CLI::App *analyze = app.add_subcommand("analyze", "intrinsic gate, Clifford data and factorization of a gate");
    analyze->add_option("--gate", a.gate, "gate spec JSON")->required();
    CLI::App *compile = app.add_subcommand("compile", "compile a single-qudit unitary into a measurement pattern");
    compile->add_option("--gate", a.gate, "gate spec JSON")->required();
    compile->add_option("--target", a.target, "target unitary JSON")->required();
    compile->add_option("--threshold", a.threshold, "largest accepted residual 1 - |tr(V^dag U)|/d");
    CLI::App *run = app.add_subcommand("run", "execute a pattern on a simulated chain");
    run->add_option("--pattern", a.pattern, "pattern JSON or compile report")->required();
    run->add_option("--graph", a.graph, "resource graph JSON (default: fresh chain)");
    run->add_option("--trials", a.trials, "number of seeded trajectories");
    run->add_flag("--dump-state", a.dump_state, "include one trajectory's output state");
    CLI::App *table = app.add_subcommand("table", "recompute the resource comparison table");
    table->add_option("--corrupt-row", a.corrupt_row, "self-test: perturb one expected value")->group("");
    CLI::App *transport = app.add_subcommand("transport", "transport pattern of a gate");
    transport->add_option("--gate", a.gate, "gate spec JSON")->required();
    transport->add_option("--trials", a.trials, "number of seeded trajectories");
    for (CLI::App *s : {analyze, compile, run, table, transport}) common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : QMBQC_ERR_PARSE;
    }

    Json req;
    req["command"] = app.get_subcommands().front()->get_name();
    try {
        if (!a.gate.empty()) req["gate"] = load(a.gate);
        if (!a.target.empty()) req["target"] = load(a.target);
        if (!a.graph.empty()) req["graph"] = load(a.graph);
        if (!a.pattern.empty()) req["pattern"] = load(a.pattern);
    } catch (const std::exception &e) {
        return parse_failure(e.what(), a.out);
    }
    req["formalism"] = a.formalism;
    req["seed"] = a.seed;
    req["trials"] = a.trials;
    req["dump_state"] = a.dump_state;
    req["threshold"] = a.threshold;
    if (a.corrupt_row >= 0) req["corrupt_row"] = a.corrupt_row;

    char *report = nullptr;
    qmbqc_status st = qmbqc_command(req.dump().c_str(), &report);
    if (report) {
        if (emit(report, a.out)) std::cerr << "qmbqc: cannot write " << a.out << "\n";
        qmbqc_string_free(report);
    }
    if (st != QMBQC_OK && *qmbqc_last_error()) std::cerr << "qmbqc: " << qmbqc_last_error() << "\n";
    return (int)st;
}
