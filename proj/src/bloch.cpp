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

#include "qcog/bloch.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qcog/nelder_mead.hpp"

namespace qcog::bloch {

using hilbert::Complex;

GeneratorBasis::GeneratorBasis(Eigen::Index n) : n_(n) {
    if (n < 2) {
        throw InvalidArgument("GeneratorBasis: n must be >= 2");
    }
    generators_.reserve(static_cast<std::size_t>(n * n - 1));
    // symmetric: E_jk + E_kj
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Matrix m = Matrix::Zero(n, n);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            generators_.push_back(std::move(m));
        }
    }
    // antisymmetric: -i(E_jk - E_kj)
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Matrix m = Matrix::Zero(n, n);
            m(j, k) = Complex(0.0, -1.0);
            m(k, j) = Complex(0.0, 1.0);
            generators_.push_back(std::move(m));
        }
    }
    // diagonal: sqrt(2/(l(l+1))) (E_00 + ... + E_{l-1,l-1} - l E_ll)
    for (Eigen::Index l = 1; l < n; ++l) {
        Matrix m = Matrix::Zero(n, n);
        const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (Eigen::Index j = 0; j < l; ++j) {
            m(j, j) = scale;
        }
        m(l, l) = -scale * static_cast<double>(l);
        generators_.push_back(std::move(m));
    }
    // normalization check: Tr(L_i L_j) = 2 d_ij
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        for (std::size_t j = i; j < generators_.size(); ++j) {
            const double expected = i == j ? 2.0 : 0.0;
            const Complex tr = (generators_[i] * generators_[j]).trace();
            if (std::abs(tr.real() - expected) > 1e-10 || std::abs(tr.imag()) > 1e-10) {
                throw InvalidArgument("GeneratorBasis: orthogonality normalization failed");
            }
        }
    }
}

double GeneratorBasis::pure_state_radius_scale() const {
    return std::sqrt(static_cast<double>(n_ * (n_ - 1)) / 2.0);
}

BlochPoint state_to_bloch(const DensityMatrix& state, const GeneratorBasis& basis) {
    if (state.dim() != basis.n()) {
        throw DimensionMismatch("state_to_bloch: state dim differs from basis n");
    }
    const double c_n = basis.pure_state_radius_scale();
    const double scale = static_cast<double>(basis.n()) / (2.0 * c_n);
    Eigen::VectorXd coords(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        coords(static_cast<Eigen::Index>(i)) = scale * (state.entries() * basis[i]).trace().real();
    }
    return {std::move(coords), basis.n()};
}

BlochPoint state_to_bloch(const StateVector& state, const GeneratorBasis& basis) {
    return state_to_bloch(DensityMatrix::pure(state), basis);
}

DensityMatrix bloch_to_density(const BlochPoint& point, const GeneratorBasis& basis) {
    if (point.n != basis.n() ||
        point.coords.size() != static_cast<Eigen::Index>(basis.size())) {
        throw DimensionMismatch("bloch_to_density: point does not match basis");
    }
    const Eigen::Index n = basis.n();
    const double c_n = basis.pure_state_radius_scale();
    Matrix rho = Matrix::Identity(n, n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        rho += c_n * point.coords(static_cast<Eigen::Index>(i)) * basis[i];
    }
    rho /= static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const Eigen::VectorXd eig = es.eigenvalues();
    if (eig.minCoeff() < -1e-9) {
        throw NotAState("bloch_to_density: reconstructed matrix has eigenvalue " +
                        std::to_string(eig.minCoeff()));
    }
    if (eig.minCoeff() < 0.0) {
        // absorb roundoff-scale negatives so the result is a valid state
        Eigen::VectorXd clipped = eig.cwiseMax(0.0);
        clipped /= clipped.sum();
        rho = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
        rho = (rho + rho.adjoint()) / 2.0;
    }
    return DensityMatrix(rho);
}

MeasurementSimplex::MeasurementSimplex(std::vector<BlochPoint> vertices)
    : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw InvalidArgument("MeasurementSimplex: needs at least two vertices");
    }
    n_ = static_cast<Eigen::Index>(vertices_.size());
    const double expected = -1.0 / static_cast<double>(n_ - 1);
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        if (vertices_[j].n != n_) {
            throw InvalidArgument("MeasurementSimplex: vertex count must equal n");
        }
        for (std::size_t k = j + 1; k < vertices_.size(); ++k) {
            const double dot = vertices_[j].coords.dot(vertices_[k].coords);
            if (std::abs(dot - expected) > 1e-9) {
                throw InvalidGeometry("MeasurementSimplex: vertex dot product " +
                                      std::to_string(dot) + " differs from -1/(n-1)");
            }
        }
    }
    // affine independence: the edges from vertex 0 must have full rank
    Eigen::MatrixXd edges(vertices_.front().coords.size(), n_ - 1);
    for (Eigen::Index k = 1; k < n_; ++k) {
        edges.col(k - 1) = vertices_[static_cast<std::size_t>(k)].coords - vertices_[0].coords;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(edges);
    if (qr.rank() != n_ - 1) {
        throw InvalidGeometry("MeasurementSimplex: vertices are affinely dependent");
    }
}

MeasurementSimplex simplex_of(const SpectralFamily& family, const GeneratorBasis& basis) {
    if (family.dim() != basis.n()) {
        throw DimensionMismatch("simplex_of: family dim differs from basis n");
    }
    std::vector<BlochPoint> vertices;
    vertices.reserve(family.size());
    for (const auto& projector : family.projectors()) {
        if (projector.rank() != 1) {
            throw DegenerateFamily("simplex_of: projector of rank " +
                                   std::to_string(projector.rank()) +
                                   "; only nondegenerate families span a simplex");
        }
        vertices.push_back(state_to_bloch(DensityMatrix(projector.matrix()), basis));
    }
    return MeasurementSimplex(std::move(vertices));
}

Eigen::VectorXd collapse_probabilities_uniform(const BlochPoint& particle,
                                               const MeasurementSimplex& simplex) {
    const Eigen::Index n = simplex.n();
    if (particle.n != n) {
        throw DimensionMismatch("collapse_probabilities_uniform: particle does not match simplex");
    }
    // barycentric coordinates of the orthogonal projection onto the affine
    // hull: minimize ||V w - r||^2 subject to sum w = 1 (KKT system)
    Eigen::MatrixXd gram(n, n);
    Eigen::VectorXd rhs(n + 1);
    const auto& vertices = simplex.vertices();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            gram(j, k) = vertices[static_cast<std::size_t>(j)].coords.dot(
                vertices[static_cast<std::size_t>(k)].coords);
        }
        rhs(j) = 2.0 * vertices[static_cast<std::size_t>(j)].coords.dot(particle.coords);
    }
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = 2.0 * gram;
    kkt.topRightCorner(n, 1).setOnes();
    kkt.bottomLeftCorner(1, n).setOnes();
    rhs(n) = 1.0;

    const Eigen::VectorXd solution = Eigen::FullPivLU<Eigen::MatrixXd>(kkt).solve(rhs);
    Eigen::VectorXd weights = solution.head(n);
    if (weights.minCoeff() < -1e-9) {
        throw InvalidGeometry(
            "collapse_probabilities_uniform: projection falls outside the simplex");
    }
    weights = weights.cwiseMax(0.0);
    return weights;
}

IntervalMembrane::IntervalMembrane(double a_, double b_) : a(a_), b(b_) {
    if (!(a >= -1.0 && a < b && b <= 1.0)) {
        throw InvalidArgument("IntervalMembrane: require -1 <= a < b <= 1");
    }
}

PiecewiseConstantMembrane::PiecewiseConstantMembrane(std::vector<double> breaks_,
                                                     std::vector<double> weights_)
    : breaks(std::move(breaks_)), weights(std::move(weights_)) {
    if (breaks.size() < 2 || weights.size() + 1 != breaks.size()) {
        throw InvalidArgument("PiecewiseConstantMembrane: need K+1 breaks for K weights");
    }
    if (std::abs(breaks.front() + 1.0) > 1e-12 || std::abs(breaks.back() - 1.0) > 1e-12) {
        throw InvalidArgument("PiecewiseConstantMembrane: breaks must span [-1,1]");
    }
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) {
            throw InvalidArgument("PiecewiseConstantMembrane: breaks must be ascending");
        }
        if (weights[i] < 0.0) {
            throw InvalidArgument("PiecewiseConstantMembrane: negative cell mass");
        }
        mass += weights[i];
    }
    if (std::abs(mass - 1.0) > 1e-12) {
        throw InvalidArgument("PiecewiseConstantMembrane: total cell mass differs from 1");
    }
}

namespace {

void require_coordinate(double e, const char* where) {
    if (e < -1.0 || e > 1.0) {
        throw InvalidArgument(std::string(where) + ": coordinate outside [-1,1]");
    }
}

}  // namespace

double membrane_cdf(const RhoMembrane& membrane, double e) {
    require_coordinate(e, "membrane_cdf");
    return std::visit(
        [e](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, UniformMembrane>) {
                return (1.0 + e) / 2.0;
            } else if constexpr (std::is_same_v<T, IntervalMembrane>) {
                return std::clamp((e - m.a) / (m.b - m.a), 0.0, 1.0);
            } else {
                double mass = 0.0;
                for (std::size_t i = 0; i + 1 < m.breaks.size(); ++i) {
                    if (e >= m.breaks[i + 1]) {
                        mass += m.weights[i];
                    } else if (e > m.breaks[i]) {
                        mass += m.weights[i] * (e - m.breaks[i]) / (m.breaks[i + 1] - m.breaks[i]);
                        break;
                    } else {
                        break;
                    }
                }
                return std::min(mass, 1.0);
            }
        },
        membrane);
}

OutcomePair collapse_probabilities_membrane(double e, const RhoMembrane& membrane) {
    const double yes = membrane_cdf(membrane, e);
    return {yes, 1.0 - yes};
}

namespace {

// inverse-CDF draw of a break point
double sample_break_point(const RhoMembrane& membrane, double u) {
    return std::visit(
        [u](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, UniformMembrane>) {
                return -1.0 + 2.0 * u;
            } else if constexpr (std::is_same_v<T, IntervalMembrane>) {
                return m.a + (m.b - m.a) * u;
            } else {
                double remaining = u;
                for (std::size_t i = 0; i + 1 < m.breaks.size(); ++i) {
                    if (remaining <= m.weights[i] || i + 2 == m.breaks.size()) {
                        const double frac =
                            m.weights[i] > 0.0 ? std::min(remaining / m.weights[i], 1.0) : 0.0;
                        return m.breaks[i] + frac * (m.breaks[i + 1] - m.breaks[i]);
                    }
                    remaining -= m.weights[i];
                }
                return m.breaks.back();
            }
        },
        membrane);
}

}  // namespace

CollapseSample sample_collapse(double e, const RhoMembrane& membrane, std::uint64_t seed) {
    require_coordinate(e, "sample_collapse");
    Rng rng(seed);
    const double break_point = sample_break_point(membrane, rng.uniform());
    const bool yes = break_point <= e;
    return {yes ? 0 : 1, yes ? 1.0 : -1.0};
}

PiecewiseConstantMembrane sample_piecewise_membrane(Rng& rng, int max_cells) {
    const int cells = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(max_cells)));
    std::vector<double> breaks(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) {
        breaks[static_cast<std::size_t>(i)] = -1.0 + 2.0 * static_cast<double>(i) / cells;
    }
    breaks.front() = -1.0;
    breaks.back() = 1.0;
    std::vector<double> weights(static_cast<std::size_t>(cells));
    double mass = 0.0;
    for (auto& w : weights) {
        w = rng.exponential();
        mass += w;
    }
    for (auto& w : weights) {
        w /= mass;
    }
    return PiecewiseConstantMembrane(std::move(breaks), std::move(weights));
}

double universal_measurement_probability(double e, int samples, std::uint64_t seed,
                                         int max_cells) {
    require_coordinate(e, "universal_measurement_probability");
    if (samples < 1) {
        throw InvalidArgument("universal_measurement_probability: samples must be >= 1");
    }
    Rng rng(seed);
    double total = 0.0;
    for (int i = 0; i < samples; ++i) {
        const RhoMembrane membrane = sample_piecewise_membrane(rng, max_cells);
        total += membrane_cdf(membrane, e);
    }
    return total / samples;
}

namespace {

double gram_determinant(double e_c, double e_g, double gamma) {
    return 1.0 + 2.0 * e_c * e_g * gamma - e_c * e_c - e_g * e_g - gamma * gamma;
}

}  // namespace

MembraneTwoQuestionModel::MembraneTwoQuestionModel(double e_c_, double e_g_, double gamma_,
                                                   RhoMembrane membrane_c_, RhoMembrane membrane_g_)
    : e_c(e_c_),
      e_g(e_g_),
      gamma(gamma_),
      membrane_c(std::move(membrane_c_)),
      membrane_g(std::move(membrane_g_)) {
    if (std::abs(e_c) > 1.0 || std::abs(e_g) > 1.0 || std::abs(gamma) > 1.0) {
        throw InconsistentGeometry("MembraneTwoQuestionModel: coordinates must lie in [-1,1]");
    }
    if (gram_determinant(e_c, e_g, gamma) < -1e-9) {
        throw InconsistentGeometry(
            "MembraneTwoQuestionModel: no unit state vector realizes (e_c, e_g, gamma)");
    }
}

order::SequentialTable predict_membrane_table(const MembraneTwoQuestionModel& model) {
    const double first_c = membrane_cdf(model.membrane_c, model.e_c);
    const double first_g = membrane_cdf(model.membrane_g, model.e_g);
    // after collapse the particle sits at a vertex; the other axis sees +-gamma
    const double g_after_cy = membrane_cdf(model.membrane_g, model.gamma);
    const double g_after_cn = membrane_cdf(model.membrane_g, -model.gamma);
    const double c_after_gy = membrane_cdf(model.membrane_c, model.gamma);
    const double c_after_gn = membrane_cdf(model.membrane_c, -model.gamma);

    order::OrderBlock cg{first_c * g_after_cy, first_c * (1.0 - g_after_cy),
                         (1.0 - first_c) * g_after_cn, (1.0 - first_c) * (1.0 - g_after_cn)};
    order::OrderBlock gc{first_g * c_after_gy, first_g * (1.0 - c_after_gy),
                         (1.0 - first_g) * c_after_gn, (1.0 - first_g) * (1.0 - c_after_gn)};
    return order::SequentialTable("C", "G", cg, gc, order::Provenance::ModelGenerated);
}

namespace {

struct MembraneFitTargets {
    double first_c;    // P(Cy) when C is asked first
    double first_g;    // P(Gy) when G is asked first
    double g_given_cy;
    double g_given_cn;
    double c_given_gy;
    double c_given_gn;
};

MembraneFitTargets fit_targets(const order::SequentialTable& table) {
    const auto conditionals = order::conditional_probabilities(table);
    return {conditionals.ab.first_yes_marginal, conditionals.ba.first_yes_marginal,
            conditionals.ab.second_yes_given_yes, conditionals.ab.second_yes_given_no,
            conditionals.ba.second_yes_given_yes, conditionals.ba.second_yes_given_no};
}

struct IntervalSolution {
    double a;
    double b;
    double e;  // particle coordinate reproducing the first-question marginal
    bool feasible;
};

// Interval (a,b) whose CDF takes value `at_plus` at +gamma and `at_minus` at
// -gamma, with the particle coordinate chosen to reproduce `marginal`.
IntervalSolution solve_interval(double gamma, double at_plus, double at_minus, double marginal) {
    const double diff = at_plus - at_minus;
    if (std::abs(gamma) < 1e-12 || std::abs(diff) < 1e-12 || gamma * diff < 0.0) {
        return {0, 0, 0, false};
    }
    const double width = 2.0 * gamma / diff;
    const double a = gamma - at_plus * width;
    const double b = a + width;
    const double e = a + marginal * width;
    const bool feasible = a >= -1.0 - 1e-12 && b <= 1.0 + 1e-12 && width >= 1e-6 &&
                          e >= -1.0 - 1e-12 && e <= 1.0 + 1e-12;
    return {std::clamp(a, -1.0, 1.0), std::clamp(b, -1.0, 1.0), std::clamp(e, -1.0, 1.0),
            feasible};
}

std::vector<double> pack_parameters(double e_c, double e_g, double gamma,
                                    const IntervalSolution& c, const IntervalSolution& g) {
    return {e_c,
            e_g,
            gamma,
            (c.a + c.b) / 2.0,
            (c.b - c.a) / 2.0,
            (g.a + g.b) / 2.0,
            (g.b - g.a) / 2.0};
}

// x = (e_c, e_g, gamma, mid_c, half_c, mid_g, half_g)
double membrane_objective(const std::vector<double>& x, const order::SequentialTable& table,
                          double width_preference) {
    const double e_c = x[0], e_g = x[1], gamma = x[2];
    const double a_c = x[3] - x[4], b_c = x[3] + x[4];
    const double a_g = x[5] - x[6], b_g = x[5] + x[6];

    double penalty = 0.0;
    auto hinge = [&penalty](double violation) {
        if (violation > 0.0) penalty += 10.0 * violation * violation;
    };
    hinge(std::abs(e_c) - 1.0);
    hinge(std::abs(e_g) - 1.0);
    hinge(std::abs(gamma) - 1.0);
    hinge(-a_c - 1.0);
    hinge(b_c - 1.0);
    hinge(-a_g - 1.0);
    hinge(b_g - 1.0);
    hinge(1e-6 - x[4]);
    hinge(1e-6 - x[6]);
    hinge(-gram_determinant(std::clamp(e_c, -1.0, 1.0), std::clamp(e_g, -1.0, 1.0),
                            std::clamp(gamma, -1.0, 1.0)));
    if (penalty > 0.0) {
        return 1.0 + penalty;
    }

    const MembraneTwoQuestionModel model(e_c, e_g, gamma, IntervalMembrane(a_c, b_c),
                                         IntervalMembrane(a_g, b_g));
    const auto predicted = predict_membrane_table(model);
    const auto pa = predicted.order_ab().as_array();
    const auto pb = predicted.order_ba().as_array();
    const auto ta = table.order_ab().as_array();
    const auto tb = table.order_ba().as_array();
    double ss = 0.0;
    for (int i = 0; i < 4; ++i) {
        ss += (pa[i] - ta[i]) * (pa[i] - ta[i]);
        ss += (pb[i] - tb[i]) * (pb[i] - tb[i]);
    }
    // tie-break between exact fits: prefer the widest (most Born-like) intervals
    return ss + width_preference * ((2.0 - (b_c - a_c)) + (2.0 - (b_g - a_g)));
}

}  // namespace

order::FitReport fit_membrane(const order::SequentialTable& table,
                              const order::FitConfig& config) {
    const MembraneFitTargets targets = fit_targets(table);
    constexpr double kWidthPreference = 1e-9;
    auto objective = [&](const std::vector<double>& x) {
        return membrane_objective(x, table, kWidthPreference);
    };

    std::vector<std::vector<double>> starts;

    // analytic seeds: exact solutions of the conditional equations at a given
    // axis angle, scanned from the widest feasible gamma downward
    const double diff_c = targets.c_given_gy - targets.c_given_gn;
    const double diff_g = targets.g_given_cy - targets.g_given_cn;
    if (diff_c * diff_g > 0.0) {
        const double sign = diff_c > 0.0 ? 1.0 : -1.0;
        double gamma_max = 0.0;
        for (double gamma_abs = 0.999; gamma_abs > 1e-3; gamma_abs -= 1e-3) {
            const double gamma = sign * gamma_abs;
            const auto c = solve_interval(gamma, targets.c_given_gy, targets.c_given_gn,
                                          targets.first_c);
            const auto g = solve_interval(gamma, targets.g_given_cy, targets.g_given_cn,
                                          targets.first_g);
            if (c.feasible && g.feasible &&
                gram_determinant(c.e, g.e, gamma) >= 0.0) {
                gamma_max = gamma;
                break;
            }
        }
        if (gamma_max != 0.0) {
            for (double fraction : {1.0, 0.9, 0.75, 0.5}) {
                const double gamma = gamma_max * fraction;
                const auto c = solve_interval(gamma, targets.c_given_gy, targets.c_given_gn,
                                              targets.first_c);
                const auto g = solve_interval(gamma, targets.g_given_cy, targets.g_given_cn,
                                              targets.first_g);
                if (c.feasible && g.feasible && gram_determinant(c.e, g.e, gamma) >= 0.0) {
                    starts.push_back(pack_parameters(c.e, g.e, gamma, c, g));
                }
            }
        }
    }

    for (int start = static_cast<int>(starts.size()); start < config.restarts; ++start) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(start)));
        const double gamma = rng.uniform(-0.95, 0.95);
        std::vector<double> x0 = {rng.uniform(-0.8, 0.8),
                                  rng.uniform(-0.8, 0.8),
                                  gamma,
                                  rng.uniform(-0.3, 0.3),
                                  rng.uniform(0.3, 1.0),
                                  rng.uniform(-0.3, 0.3),
                                  rng.uniform(0.3, 1.0)};
        if (gram_determinant(x0[0], x0[1], gamma) < 0.0) {
            x0[0] *= 0.25;
            x0[1] *= 0.25;
        }
        starts.push_back(std::move(x0));
    }

    optim::NelderMeadOptions options;
    options.max_iterations = config.max_iterations;
    options.f_tol = 1e-24;
    options.x_tol = 1e-11;
    options.initial_step = 0.15;

    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    int total_iterations = 0;
    bool any_converged = false;
    for (const auto& x0 : starts) {
        const auto result = optim::nelder_mead(objective, x0, options);
        total_iterations += result.iterations;
        any_converged = any_converged || result.converged;
        if (result.fmin < best_f) {
            best_f = result.fmin;
            best_x = result.x;
        }
    }

    std::map<std::string, double> parameters = {
        {"e_c", best_x[0]},
        {"e_g", best_x[1]},
        {"gamma", best_x[2]},
        {"a_c", best_x[3] - best_x[4]},
        {"b_c", best_x[3] + best_x[4]},
        {"a_g", best_x[5] - best_x[6]},
        {"b_g", best_x[5] + best_x[6]}};
    const auto model = membrane_model_from_parameters(parameters);
    const auto predicted = predict_membrane_table(model);

    const auto pa = predicted.order_ab().as_array();
    const auto pb = predicted.order_ba().as_array();
    const auto ta = table.order_ab().as_array();
    const auto tb = table.order_ba().as_array();
    double ss = 0.0;
    for (int i = 0; i < 4; ++i) {
        ss += (pa[i] - ta[i]) * (pa[i] - ta[i]);
        ss += (pb[i] - tb[i]) * (pb[i] - tb[i]);
    }

    return {std::move(parameters), std::sqrt(ss), predicted, total_iterations, any_converged};
}

MembraneTwoQuestionModel membrane_model_from_parameters(
    const std::map<std::string, double>& parameters) {
    auto get = [&](const char* name) {
        auto it = parameters.find(name);
        if (it == parameters.end()) {
            throw InvalidArgument(std::string("membrane_model_from_parameters: missing '") + name +
                                  "'");
        }
        return it->second;
    };
    return MembraneTwoQuestionModel(get("e_c"), get("e_g"), get("gamma"),
                                    IntervalMembrane(get("a_c"), get("b_c")),
                                    IntervalMembrane(get("a_g"), get("b_g")));
}

namespace {

struct ParticlePosition {
    bool at_vertex = false;
    Question vertex_question = Question::C;
    double vertex_sign = 1.0;
};

double coordinate_of(const MembraneTwoQuestionModel& model, const ParticlePosition& position,
                     Question asked) {
    if (!position.at_vertex) {
        return asked == Question::C ? model.e_c : model.e_g;
    }
    if (position.vertex_question == asked) {
        return position.vertex_sign;
    }
    return position.vertex_sign * model.gamma;
}

}  // namespace

ReplicabilityStats simulate_replicability(const MembraneTwoQuestionModel& model,
                                          const std::vector<Question>& sequence, int participants,
                                          ReplicabilityPolicy policy, std::uint64_t seed) {
    if (participants < 1) {
        throw InvalidArgument("simulate_replicability: participants must be >= 1");
    }
    if (sequence.empty()) {
        throw InvalidArgument("simulate_replicability: empty question sequence");
    }

    ReplicabilityStats stats;
    stats.sequence = sequence;
    stats.participants = participants;

    std::uint64_t replicable = 0;
    for (int participant = 0; participant < participants; ++participant) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(participant)));
        ParticlePosition position;
        // memory policy: once answered, a question's membrane has degenerated
        // and deterministically repeats the recorded outcome
        bool locked[2] = {false, false};
        bool locked_yes[2] = {false, false};
        bool first_seen[2] = {false, false};
        bool first_yes[2] = {false, false};
        bool consistent = true;

        std::string outcome_string;
        outcome_string.reserve(sequence.size());
        for (Question q : sequence) {
            const int qi = q == Question::C ? 0 : 1;
            bool yes;
            if (policy == ReplicabilityPolicy::Memory && locked[qi]) {
                yes = locked_yes[qi];
            } else {
                const RhoMembrane& membrane =
                    q == Question::C ? model.membrane_c : model.membrane_g;
                const double e = coordinate_of(model, position, q);
                const double break_point = sample_break_point(membrane, rng.uniform());
                yes = break_point <= e;
            }
            position = {true, q, yes ? 1.0 : -1.0};
            if (policy == ReplicabilityPolicy::Memory) {
                locked[qi] = true;
                locked_yes[qi] = yes;
            }
            if (!first_seen[qi]) {
                first_seen[qi] = true;
                first_yes[qi] = yes;
            } else if (first_yes[qi] != yes) {
                consistent = false;
            }
            outcome_string.push_back(yes ? 'y' : 'n');
        }
        if (consistent) {
            ++replicable;
        }
        ++stats.counts[outcome_string];
    }
    stats.repeat_agreement =
        static_cast<double>(replicable) / static_cast<double>(participants);
    return stats;
}

}  // namespace qcog::bloch
