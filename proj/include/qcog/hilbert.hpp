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

#ifndef QCOG_HILBERT_HPP
#define QCOG_HILBERT_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qcog/common.hpp"

namespace qcog::hilbert {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// A ray state: unit complex vector, dim >= 2. States equal up to a global
/// phase describe the same physical situation; see `same_ray`.
class StateVector {
  public:
    explicit StateVector(Vector amplitudes);

    /// Normalizes the given vector first; rejects (near-)zero vectors.
    static StateVector normalized(const Vector& amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }
    Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  private:
    Vector amplitudes_;
};

/// Mixed-state generalization: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix entries);
    static DensityMatrix pure(const StateVector& state);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

  private:
    Matrix entries_;
};

/// Orthogonal projection operator (idempotent Hermitian, integer trace).
class Projector {
  public:
    explicit Projector(Matrix matrix);
    /// Rank-1 projector |v><v| onto a unit vector.
    static Projector onto(const StateVector& v);
    /// Projector onto the span of orthonormal columns.
    static Projector onto_span(const Matrix& orthonormal_columns);
    static Projector identity(Eigen::Index dim);

    Eigen::Index dim() const { return matrix_.rows(); }
    int rank() const { return rank_; }
    const Matrix& matrix() const { return matrix_; }
    Projector complement() const;

  private:
    Matrix matrix_;
    int rank_;
};

/// Measurement context: mutually orthogonal projectors summing to identity,
/// one projector per outcome.
class SpectralFamily {
  public:
    explicit SpectralFamily(std::vector<Projector> projectors,
                            std::vector<std::string> outcome_labels = {});
    /// Two-outcome family {M, 1-M}.
    static SpectralFamily yes_no(const Projector& m, std::string yes = "yes",
                                 std::string no = "no");

    Eigen::Index dim() const { return projectors_.front().dim(); }
    std::size_t size() const { return projectors_.size(); }
    const Projector& operator[](std::size_t k) const { return projectors_.at(k); }
    const std::vector<Projector>& projectors() const { return projectors_; }
    const std::vector<std::string>& outcome_labels() const { return labels_; }
    /// True when every projector has rank 1.
    bool nondegenerate() const;

  private:
    std::vector<Projector> projectors_;
    std::vector<std::string> labels_;
};

using State = std::variant<StateVector, DensityMatrix>;

/// SCoP wrapper: an entity in a state, with named measurement contexts.
class ConceptualEntity {
  public:
    ConceptualEntity(std::string label, State state);

    const std::string& label() const { return label_; }
    const State& state() const { return state_; }
    Eigen::Index dim() const;

    void add_context(const std::string& name, SpectralFamily family);
    const SpectralFamily& context(const std::string& name) const;
    const std::map<std::string, SpectralFamily>& contexts() const { return contexts_; }

    /// Transition probability mu(p_k, e, p_A) for outcome k of context e.
    double transition_probability(const std::string& context_name, std::size_t outcome) const;
    /// Collapses the (pure) state onto the given outcome.
    void collapse(const std::string& context_name, std::size_t outcome);

  private:
    std::string label_;
    State state_;
    std::map<std::string, SpectralFamily> contexts_;
};

/// Born rule <A|M|A> (resp. Tr(rho M)), clamped to [0,1].
double born_probability(const StateVector& state, const Projector& m);
double born_probability(const DensityMatrix& state, const Projector& m);
double born_probability(const State& state, const Projector& m);

/// Post-measurement state M|A> / sqrt(<A|M|A>). Throws ZeroProbabilityOutcome
/// when the outcome probability is below kZeroProbEps.
StateVector luders_update(const StateVector& state, const Projector& m);

struct MeasurementStep {
    SpectralFamily family;
    std::size_t outcome;
};

/// Probability of one outcome path of a sequence of ideal measurements,
/// <A|M_1 ... M_n ... M_1|A>, via chained Born + Lueders updates.
double sequential_probability(const StateVector& state, const std::vector<MeasurementStep>& steps);

/// ||AB - BA||_F; zero exactly when the projectors commute.
double commutator_frobenius_norm(const Projector& a, const Projector& b);

/// True when the two rays coincide: | <a|b> | = 1 within tol.
bool same_ray(const StateVector& a, const StateVector& b, double tol = 1e-10);

/// Haar-like random unit state; deterministic in the seed.
StateVector random_state(Eigen::Index dim, std::uint64_t seed);

/// Haar-like random unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(Eigen::Index dim, std::uint64_t seed);

/// Random spectral family with the given projector ranks (must sum to dim).
SpectralFamily random_spectral_family(Eigen::Index dim, const std::vector<int>& ranks,
                                      std::uint64_t seed);

}  // namespace qcog::hilbert

#endif  // QCOG_HILBERT_HPP
