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

#ifndef QMBQC_SIM_HPP
#define QMBQC_SIM_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmbqc/galois.hpp"
#include "qmbqc/linalg.hpp"

namespace qmbqc {

using Rng = std::mt19937_64;

/// Amplitudes over d^n basis states; site 0 is the most significant digit.
struct StateVector {
    DimSpec dim;
    int n = 0;
    Vec amps;
    double tol = kTol;
};

/// d^k orthonormal columns over k sites.
struct MeasurementBasis {
    int d = 0;
    int sites = 1;
    Mat vectors;
    std::string label;
};

struct MeasureResult {
    int outcome = 0;
    StateVector post;  // measured sites removed
    double probability = 0;
};

struct SchmidtResult {
    Eigen::VectorXd coefficients;
    Mat left;
    Mat right;
};

StateVector make_state(const DimSpec &dim, const Vec &amps);
StateVector product_state(const DimSpec &dim, const std::vector<Vec> &factors);
StateVector tensor(const StateVector &a, const StateVector &b);
StateVector apply(const StateVector &state, const Mat &op, const std::vector<int> &sites);
StateVector apply(const StateVector &state, const DenseOperator &op, const std::vector<int> &sites);

MeasurementBasis make_basis(int d, const Mat &vectors, const std::string &label, double tol = kTol);
/// Every vector has computational amplitudes of modulus 1/sqrt(d).
bool transport_valid(const MeasurementBasis &basis, double tol = kTol);
MeasurementBasis z_basis(const DimSpec &dim);
MeasurementBasis bell_basis(const DimSpec &dim);

std::vector<double> outcome_probabilities(const StateVector &state, const MeasurementBasis &basis,
                                          const std::vector<int> &sites);
MeasureResult measure(const StateVector &state, const MeasurementBasis &basis, const std::vector<int> &sites, Rng *rng,
                      std::optional<int> forced = std::nullopt);
MeasureResult measure(const StateVector &state, const MeasurementBasis &basis, int site, Rng *rng,
                      std::optional<int> forced = std::nullopt);

DenseOperator reduced_density(const StateVector &state, const std::vector<int> &keep_sites);
SchmidtResult schmidt(const StateVector &state, const std::vector<int> &left_sites);
bool is_max_entangled(const StateVector &state, const std::vector<int> &left_sites, double tol = kTol);

/// Amplitudes reshaped to (d^|rows| x d^rest), rest in increasing site order.
/// Haar-random unitary from the QR of a complex Gaussian matrix.
Mat haar_unitary(int d, Rng &rng);

Mat to_matrix(const StateVector &state, const std::vector<int> &row_sites);
Vec from_matrix(const Mat &m, int d, int n, const std::vector<int> &row_sites);

}  // namespace qmbqc

#endif
