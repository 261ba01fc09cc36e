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

#ifndef QMBQC_IO_HPP
#define QMBQC_IO_HPP

#include <string>
#include <utility>

#include "json.hpp"
#include "qmbqc/engine.hpp"

namespace qmbqc {

using Json = nlohmann::ordered_json;

// All readers throw Error(ParseError) on malformed input.

Json dim_to_json(const DimSpec &dim);
DimSpec dim_from_json(const Json &j);
/// Ring of size d, or GF(p^m) with the default polynomial when formalism is "field".
DimSpec dim_for(int d, const std::string &formalism);

Json cplx_to_json(cplx z);
cplx cplx_from_json(const Json &j);
Json vec_to_json(const Vec &v);
Vec vec_from_json(const Json &j);
Json mat_to_json(const Mat &m);
Mat mat_from_json(const Json &j);

/// Field labels are written as coefficient arrays, low degree first.
Json word_to_json(const PauliWord &w);
PauliWord word_from_json(const DimSpec &dim, const Json &j);

/// Missing "dim" is inferred from the matrix sizes or "d" and the formalism.
Json gate_to_json(const EntanglingGateSpec &g);
EntanglingGateSpec gate_from_json(const Json &j, const std::string &formalism = "ring");

/// "intrinsic" holds the gate spec the pattern runs on.
Json pattern_to_json(const MeasurementPattern &p, const EntanglingGateSpec &gate);
std::pair<MeasurementPattern, EntanglingGateSpec> pattern_from_json(const Json &j, const std::string &formalism = "ring");

Json graph_to_json(const ResourceGraph &g);
/// Edge "gate" is a named gate, a key of the optional "gates" map, or an inline spec.
ResourceGraph graph_from_json(const Json &j, const std::string &formalism = "ring");

Json state_to_json(const StateVector &s);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string &data);
std::string dump_json(const Json &j);
Json parse_json(const std::string &text);

}  // namespace qmbqc

#endif
