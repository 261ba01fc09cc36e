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

#ifndef QMBQC_ENGINE_HPP
#define QMBQC_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmbqc/compiler.hpp"
#include "qmbqc/sim.hpp"

namespace qmbqc {

constexpr long long kMaxAmplitudes = 1000000;

/// Initial state: D_phi|0_X> from phases, |k_Z> from z_label, or raw amplitudes.
struct GraphVertex {
    int id = 0;
    std::vector<double> phases;
    std::optional<int> z_label;
    std::optional<Vec> amps;
};

struct GraphEdge {
    int control = 0;
    int target = 0;
    EntanglingGateSpec gate;
    int seq = 0;
};

struct ResourceGraph {
    DimSpec dim;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
};

Vec vertex_state(const DimSpec &dim, const GraphVertex &v);
int vertex_index(const ResourceGraph &g, int id);
std::vector<int> neighbors(const ResourceGraph &g, int id);
bool all_diagonal(const ResourceGraph &g);
ResourceGraph remove_vertex(const ResourceGraph &g, int id);

/// Sites follow the vertex list order. Edges are applied in seq order.
StateVector build(const ResourceGraph &g);
/// Same, with the joint state `input` replacing the initial states of `input_ids`.
StateVector build_with_input(const ResourceGraph &g, const std::vector<int> &input_ids, const Vec &input);
/// X_v (or D X D^dag for a phased init) pushed through every edge; the built state is a +1 eigenvector.
PauliWord vertex_stabilizer(const ResourceGraph &g, int v);

// templates
ResourceGraph chain_graph(const EntanglingGateSpec &gate, int length);
/// rows x cols, edges left to right and top to bottom.
ResourceGraph lattice_diagonal(const EntanglingGateSpec &gate, int rows, int cols);
/// `rows` computational rows with a mediator row between neighbours; vertical edges point into the mediators.
ResourceGraph lattice_block(const EntanglingGateSpec &gate, int rows, int cols, const Vec &mediator_init);
/// Two three-qudit rows (0,1,2) and (3,4,5) joined by the edge 1 -> 4.
ResourceGraph edge_graph(const EntanglingGateSpec &gate);

struct PauliFrame {
    std::vector<PauliWord> frames;                // one per logical qudit
    std::vector<std::pair<int, int>> history;     // (step, outcome)
};

enum class InputCoupling { Direct, Bell };

struct RunOptions {
    InputCoupling coupling = InputCoupling::Direct;
    std::vector<int> forced;  // outcomes per measurement, Bell outcome first
    double min_fidelity = 1 - 1e-9;
};

struct RunResult {
    Vec output;
    PauliFrame frame;
    Mat ideal;  // operator the frame is measured against
    double fidelity = 0;
};

/// Lazy execution keeping two live qudits. Throws FrameMismatch if the dense check fails.
RunResult run_pattern(const ResourceGraph &chain, const MeasurementPattern &pattern, const Vec &input, Rng &rng,
                      const RunOptions &opt = {});
/// Reference execution on the fully built chain.
RunResult run_pattern_dense(const ResourceGraph &chain, const MeasurementPattern &pattern, const Vec &input, Rng &rng,
                            const RunOptions &opt = {});

struct TrialSummary {
    int trials = 0;
    int failures = 0;
    double min_fidelity = 1;
};
/// Independent trajectories with streams seeded from seed + trial index, run concurrently.
TrialSummary run_trials(const ResourceGraph &chain, const MeasurementPattern &pattern, const Vec &input,
                        std::uint64_t seed, int trials, InputCoupling coupling = InputCoupling::Direct);

struct CoupleResult {
    Vec output;
    PauliWord frame;
    PauliWord byproduct;  // output = G_I * byproduct * psi
    int outcome = 0;
};
CoupleResult couple_input(const Vec &psi, const EntanglingGateSpec &gate, Rng &rng,
                          std::optional<int> forced = std::nullopt);

struct EdgeResult {
    Vec output;
    PauliWord frame;   // two-qudit
    Mat logical;       // (G (x) G) G_E (G (x) G)
    std::vector<int> outcomes;
    double fidelity = 0;
};
EdgeResult entangle_via_edge(const EntanglingGateSpec &gate, const Vec &input, Rng &rng,
                             const std::vector<int> &forced = {});

enum class MediatorMode { Disconnect, Entangle };
enum class MediatorInit { PauliMap, Resource };

struct Correction {
    int vertex = 0;
    Mat op;
    std::string label;
};

struct MediatorResult {
    Vec output;            // two computational qudits
    int outcome = 0;
    PauliWord frame;       // Z^{-k} (x) Z^{-k}
    Mat expected;          // two-qudit operator realized up to the frame
    Vec mediator_init;
    Mat gc;                // G_C
    Mat basis;             // measured vectors as columns
    std::vector<Correction> corrections;
    double fidelity = 0;
};
MediatorResult mediator_step(const EntanglingGateSpec &gate, const Vec &psi, MediatorMode mode, Rng &rng,
                             std::optional<int> forced = std::nullopt, MediatorInit init = MediatorInit::PauliMap);

struct RewriteResult {
    ResourceGraph graph;     // target graph
    StateVector posterior;   // raw post-measurement state, corrections not applied
    std::vector<Correction> corrections;
    int outcome = 0;
    double fidelity = 0;     // corrected posterior against build(graph)
};
StateVector apply_corrections(const StateVector &state, const ResourceGraph &g, const std::vector<Correction> &cs);
RewriteResult vertex_delete(const ResourceGraph &g, int vertex, Rng &rng, std::optional<int> forced = std::nullopt);
RewriteResult local_complement(const ResourceGraph &g, int vertex, Rng &rng, std::optional<int> forced = std::nullopt);

}  // namespace qmbqc

#endif
