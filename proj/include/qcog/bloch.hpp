// Copyright 2026 qcog developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCOG_BLOCH_HPP
#define QCOG_BLOCH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qcog/hilbert.hpp"
#include "qcog/order_effects.hpp"
#include "qcog/rng.hpp"

namespace qcog::bloch {

using hilbert::DensityMatrix;
using hilbert::Matrix;
using hilbert::SpectralFamily;
using hilbert::StateVector;

/// Orthogonal generator set for traceless Hermitian n x n matrices
/// (generalized Gell-Mann construction), normalized to Tr(L_i L_j) = 2 d_ij.
/// Ordering: symmetric pairs (j<k, lexicographic), antisymmetric pairs,
/// then the n-1 diagonal generators. For n=2 this is (sigma_x, sigma_y,
/// sigma_z).
class GeneratorBasis {
  public:
    explicit GeneratorBasis(Eigen::Index n);

    Eigen::Index n() const { return n_; }
    std::size_t size() const { return generators_.size(); }
    const Matrix& operator[](std::size_t i) const { return generators_.at(i); }
    const std::vector<Matrix>& generators() const { return generators_; }

    /// sqrt(n(n-1)/2): the radial scaling that puts pure states on the unit
    /// sphere.
    double pure_state_radius_scale() const;

  private:
    Eigen::Index n_;
    std::vector<Matrix> generators_;
};

/// Real coordinate vector of a state inside the generalized Bloch ball.
struct BlochPoint {
    Eigen::VectorXd coords;
    Eigen::Index n = 0;

    double norm() const { return coords.norm(); }
};

/// Representation of a state as a point of the generalized Bloch sphere:
/// coords_i = n/(2 c_n) Tr(rho L_i), with c_n = sqrt(n(n-1)/2), so that pure
/// states sit on the unit sphere and the maximally mixed state at the origin.
BlochPoint state_to_bloch(const DensityMatrix& state, const GeneratorBasis& basis);
BlochPoint state_to_bloch(const StateVector& state, const GeneratorBasis& basis);

/// Inverse map rho = (1/n)(I + c_n sum_i coords_i L_i). Throws NotAState when
/// the reconstructed matrix has an eigenvalue below -1e-9 (points outside the
/// convex state body).
DensityMatrix bloch_to_density(const BlochPoint& point, const GeneratorBasis& basis);

/// The (n-1)-simplex spanned by the Bloch images of a nondegenerate
/// measurement's eigenstates. Vertices sum to zero and have pairwise dot
/// product -1/(n-1).
class MeasurementSimplex {
  public:
    explicit MeasurementSimplex(std::vector<BlochPoint> vertices);

    Eigen::Index n() const { return n_; }
    const std::vector<BlochPoint>& vertices() const { return vertices_; }

  private:
    std::vector<BlochPoint> vertices_;
    Eigen::Index n_;
};

/// Throws DegenerateFamily unless every projector has rank 1.
MeasurementSimplex simplex_of(const SpectralFamily& family, const GeneratorBasis& basis);

/// Uniform-membrane collapse: orthogonally projects the particle onto the
/// simplex's affine hull and returns its barycentric coordinates. Equals the
/// Born probabilities of the corresponding measurement.
Eigen::VectorXd collapse_probabilities_uniform(const BlochPoint& particle,
                                               const MeasurementSimplex& simplex);

// -- one-dimensional rho-membranes (n = 2) ----------------------------------

struct UniformMembrane {};

/// Locally uniform membrane that can break only inside [a,b].
struct IntervalMembrane {
    double a;
    double b;
    IntervalMembrane(double a_, double b_);
};

/// Step density over cells of [-1,1]; weights are the cell masses.
struct PiecewiseConstantMembrane {
    std::vector<double> breaks;   // ascending, breaks.front() = -1, breaks.back() = 1
    std::vector<double> weights;  // one mass per cell, nonnegative, sums to 1
    PiecewiseConstantMembrane(std::vector<double> breaks_, std::vector<double> weights_);
};

using RhoMembrane = std::variant<UniformMembrane, IntervalMembrane, PiecewiseConstantMembrane>;

/// Cumulative break-point mass on [-1, e].
double membrane_cdf(const RhoMembrane& membrane, double e);

struct OutcomePair {
    double yes;
    double no;
};

/// Two-outcome collapse probabilities for a particle at coordinate e: a break
/// point between the "no" vertex and the particle pulls it to "yes", so
/// p_yes is the CDF at e.
OutcomePair collapse_probabilities_membrane(double e, const RhoMembrane& membrane);

struct CollapseSample {
    int outcome;             // 0 = yes, 1 = no
    double post_coordinate;  // +1 or -1 on the measurement axis
};

/// Draws one break point and collapses; deterministic in the seed.
CollapseSample sample_collapse(double e, const RhoMembrane& membrane, std::uint64_t seed);

/// Random piecewise-constant membrane: cell count uniform on 1..max_cells,
/// equal-width cells, Exp(1) cell weights normalized to unit mass.
PiecewiseConstantMembrane sample_piecewise_membrane(Rng& rng, int max_cells = 20);

/// Universal-measurement estimate at coordinate e: averages p_yes over
/// `samples` random membranes. Converges to the Born value (1+e)/2.
double universal_measurement_probability(double e, int samples, std::uint64_t seed,
                                         int max_cells = 20);

// -- two-question membrane models --------------------------------------------

/// Two yes-no questions inside a 3-dimensional Bloch sphere: the particle has
/// coordinate e_c (e_g) along the C (G) measurement axis, the axes meet at
/// angle arccos(gamma), and each question carries its own membrane.
struct MembraneTwoQuestionModel {
    double e_c;
    double e_g;
    double gamma;
    RhoMembrane membrane_c;
    RhoMembrane membrane_g;

    MembraneTwoQuestionModel(double e_c_, double e_g_, double gamma_, RhoMembrane membrane_c_,
                             RhoMembrane membrane_g_);
};

/// All eight sequential probabilities: first answers from the membrane CDF at
/// the particle coordinate, second answers from the collapsed vertex, whose
/// coordinate along the other axis is +-gamma.
order::SequentialTable predict_membrane_table(const MembraneTwoQuestionModel& model);

/// Fits (e_c, e_g, gamma, a_c, b_c, a_g, b_g) with interval membranes to a
/// sequential table. Among exact fits the widest intervals (the most
/// Born-like membranes) are preferred.
order::FitReport fit_membrane(const order::SequentialTable& table,
                              const order::FitConfig& config = {});

/// Reconstructs the model of a fit_membrane report.
MembraneTwoQuestionModel membrane_model_from_parameters(
    const std::map<std::string, double>& parameters);

// -- response replicability ---------------------------------------------------

enum class Question { C, G };

enum class ReplicabilityPolicy {
    Memory,      // an answered question's membrane degenerates: the outcome repeats
    Memoryless,  // every trial samples the current membrane afresh
};

struct ReplicabilityStats {
    std::vector<Question> sequence;
    int participants = 0;
    /// Outcome-string ("yny"...) histogram over participants.
    std::map<std::string, std::uint64_t> counts;
    /// Fraction of participants whose repeated questions always got their
    /// first answer again.
    double repeat_agreement = 0.0;
};

ReplicabilityStats simulate_replicability(const MembraneTwoQuestionModel& model,
                                          const std::vector<Question>& sequence, int participants,
                                          ReplicabilityPolicy policy, std::uint64_t seed);

}  // namespace qcog::bloch

#endif  // QCOG_BLOCH_HPP
