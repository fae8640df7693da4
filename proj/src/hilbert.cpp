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

#include "qcog/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "qcog/rng.hpp"

namespace qcog::hilbert {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* where) {
    if (a != b) {
        throw DimensionMismatch(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw InvalidArgument("StateVector: dim must be >= 2");
    }
    const double sq = amplitudes_.squaredNorm();
    if (std::abs(sq - 1.0) > kNormTol) {
        throw InvalidArgument("StateVector: squared norm " + std::to_string(sq) +
                              " differs from 1 beyond 1e-12");
    }
}

StateVector StateVector::normalized(const Vector& amplitudes) {
    const double n = amplitudes.norm();
    if (n < 1e-14) {
        throw InvalidArgument("StateVector::normalized: vector has (near-)zero norm");
    }
    return StateVector(amplitudes / n);
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
        throw InvalidArgument("DensityMatrix: entries must be square with dim >= 2");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kNormTol) {
        throw InvalidArgument("DensityMatrix: not Hermitian within 1e-12");
    }
    if (std::abs(entries_.trace().real() - 1.0) > kNormTol ||
        std::abs(entries_.trace().imag()) > kNormTol) {
        throw InvalidArgument("DensityMatrix: trace differs from 1 beyond 1e-12");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw InvalidArgument("DensityMatrix: negative eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
    return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Projector::Projector(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
        throw InvalidArgument("Projector: matrix must be square");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw InvalidArgument("Projector: not Hermitian within 1e-10");
    }
    if ((matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw InvalidArgument("Projector: not idempotent within 1e-10");
    }
    const double tr = matrix_.trace().real();
    rank_ = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank_) > kTraceRankTol) {
        throw InvalidArgument("Projector: trace " + std::to_string(tr) + " is not integral");
    }
}

Projector Projector::onto(const StateVector& v) {
    return Projector(v.amplitudes() * v.amplitudes().adjoint());
}

Projector Projector::onto_span(const Matrix& orthonormal_columns) {
    return Projector(orthonormal_columns * orthonormal_columns.adjoint());
}

Projector Projector::identity(Eigen::Index dim) {
    return Projector(Matrix::Identity(dim, dim));
}

Projector Projector::complement() const {
    return Projector(Matrix::Identity(dim(), dim()) - matrix_);
}

SpectralFamily::SpectralFamily(std::vector<Projector> projectors,
                               std::vector<std::string> outcome_labels)
    : projectors_(std::move(projectors)), labels_(std::move(outcome_labels)) {
    if (projectors_.empty()) {
        throw InvalidArgument("SpectralFamily: needs at least one projector");
    }
    const Eigen::Index d = projectors_.front().dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& p : projectors_) {
        require_same_dim(p.dim(), d, "SpectralFamily");
        sum += p.matrix();
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw InvalidArgument("SpectralFamily: projectors do not sum to identity within 1e-10");
    }
    for (std::size_t k = 0; k < projectors_.size(); ++k) {
        for (std::size_t l = k + 1; l < projectors_.size(); ++l) {
            const Matrix prod = projectors_[k].matrix() * projectors_[l].matrix();
            if (prod.cwiseAbs().maxCoeff() > kProjectorTol) {
                throw InvalidArgument("SpectralFamily: projectors " + std::to_string(k) + "," +
                                      std::to_string(l) + " are not orthogonal within 1e-10");
            }
        }
    }
    if (labels_.empty()) {
        for (std::size_t k = 0; k < projectors_.size(); ++k) {
            labels_.push_back(std::to_string(k));
        }
    }
    if (labels_.size() != projectors_.size()) {
        throw InvalidArgument("SpectralFamily: one label per outcome required");
    }
}

SpectralFamily SpectralFamily::yes_no(const Projector& m, std::string yes, std::string no) {
    std::vector<Projector> ps;
    ps.push_back(m);
    ps.push_back(m.complement());
    return SpectralFamily(std::move(ps), {std::move(yes), std::move(no)});
}

bool SpectralFamily::nondegenerate() const {
    for (const auto& p : projectors_) {
        if (p.rank() != 1) return false;
    }
    return true;
}

ConceptualEntity::ConceptualEntity(std::string label, State state)
    : label_(std::move(label)), state_(std::move(state)) {}

Eigen::Index ConceptualEntity::dim() const {
    return std::visit([](const auto& s) { return s.dim(); }, state_);
}

void ConceptualEntity::add_context(const std::string& name, SpectralFamily family) {
    require_same_dim(family.dim(), dim(), "ConceptualEntity::add_context");
    contexts_.insert_or_assign(name, std::move(family));
}

const SpectralFamily& ConceptualEntity::context(const std::string& name) const {
    auto it = contexts_.find(name);
    if (it == contexts_.end()) {
        throw InvalidArgument("ConceptualEntity: unknown context '" + name + "'");
    }
    return it->second;
}

double ConceptualEntity::transition_probability(const std::string& context_name,
                                                std::size_t outcome) const {
    return born_probability(state_, context(context_name)[outcome]);
}

void ConceptualEntity::collapse(const std::string& context_name, std::size_t outcome) {
    const auto* pure = std::get_if<StateVector>(&state_);
    if (pure == nullptr) {
        throw InvalidArgument("ConceptualEntity::collapse: only pure states collapse here");
    }
    state_ = luders_update(*pure, context(context_name)[outcome]);
}

double born_probability(const StateVector& state, const Projector& m) {
    require_same_dim(state.dim(), m.dim(), "born_probability");
    const Complex val = state.amplitudes().dot(m.matrix() * state.amplitudes());
    return clamp_probability(val.real(), "born_probability");
}

double born_probability(const DensityMatrix& state, const Projector& m) {
    require_same_dim(state.dim(), m.dim(), "born_probability");
    const Complex val = (state.entries() * m.matrix()).trace();
    return clamp_probability(val.real(), "born_probability");
}

double born_probability(const State& state, const Projector& m) {
    return std::visit([&](const auto& s) { return born_probability(s, m); }, state);
}

StateVector luders_update(const StateVector& state, const Projector& m) {
    require_same_dim(state.dim(), m.dim(), "luders_update");
    const Vector projected = m.matrix() * state.amplitudes();
    const double p = projected.squaredNorm();
    if (p <= kZeroProbEps) {
        throw ZeroProbabilityOutcome("luders_update: outcome probability " + std::to_string(p) +
                                     " below 1e-12");
    }
    return StateVector(projected / projected.norm());
}

double sequential_probability(const StateVector& state,
                              const std::vector<MeasurementStep>& steps) {
    if (steps.empty()) {
        throw InvalidArgument("sequential_probability: empty step list");
    }
    Vector current = state.amplitudes();
    double total = 1.0;
    for (const auto& step : steps) {
        require_same_dim(current.size(), step.family.dim(), "sequential_probability");
        if (step.outcome >= step.family.size()) {
            throw InvalidArgument("sequential_probability: outcome index out of range");
        }
        const Vector projected = step.family[step.outcome].matrix() * current;
        const double p = projected.squaredNorm();
        total *= p;
        if (p <= kZeroProbEps) {
            return 0.0;
        }
        current = projected / projected.norm();
    }
    return clamp_probability(total, "sequential_probability");
}

double commutator_frobenius_norm(const Projector& a, const Projector& b) {
    require_same_dim(a.dim(), b.dim(), "commutator_frobenius_norm");
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
}

bool same_ray(const StateVector& a, const StateVector& b, double tol) {
    if (a.dim() != b.dim()) return false;
    return std::abs(std::abs(a.amplitudes().dot(b.amplitudes())) - 1.0) <= tol;
}

StateVector random_state(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 2) {
        throw InvalidArgument("random_state: dim must be >= 2");
    }
    Rng rng(seed);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = Complex(rng.gaussian(), rng.gaussian());
    }
    return StateVector::normalized(v);
}

Matrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(seed);
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    // Gram-Schmidt orthonormalization of the Gaussian columns.
    Matrix q(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        Vector col = g.col(j);
        for (Eigen::Index k = 0; k < j; ++k) {
            col -= q.col(k).dot(g.col(j)) * q.col(k);
        }
        const double n = col.norm();
        if (n < 1e-12) {
            // astronomically unlikely; perturb and retry deterministically
            return random_unitary(dim, splitmix64(seed));
        }
        q.col(j) = col / n;
    }
    return q;
}

SpectralFamily random_spectral_family(Eigen::Index dim, const std::vector<int>& ranks,
                                      std::uint64_t seed) {
    if (dim < 2) {
        throw InvalidArgument("random_spectral_family: dim must be >= 2");
    }
    int total = 0;
    for (int r : ranks) {
        if (r < 1) throw InvalidArgument("random_spectral_family: ranks must be positive");
        total += r;
    }
    if (total != dim) {
        throw InvalidArgument("random_spectral_family: ranks must sum to dim");
    }
    const Matrix u = random_unitary(dim, seed);
    std::vector<Projector> projectors;
    projectors.reserve(ranks.size());
    Eigen::Index col = 0;
    for (int r : ranks) {
        projectors.push_back(Projector::onto_span(u.middleCols(col, r)));
        col += r;
    }
    return SpectralFamily(std::move(projectors));
}

}  // namespace qcog::hilbert
