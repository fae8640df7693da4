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

#include "qcog/order_effects.hpp"

#include <cmath>
#include <limits>

#include "qcog/nelder_mead.hpp"
#include "qcog/rng.hpp"

namespace qcog::order {

using hilbert::MeasurementStep;
using hilbert::Projector;
using hilbert::SpectralFamily;
using hilbert::StateVector;

namespace {

void validate_block(const OrderBlock& block, double sum_tol, const char* name) {
    for (double v : block.as_array()) {
        if (v < 0.0 || v > 1.0) {
            throw InvalidArgument(std::string("SequentialTable: entry of ") + name +
                                  " outside [0,1]");
        }
    }
    if (std::abs(block.sum() - 1.0) > sum_tol) {
        throw InvalidArgument(std::string("SequentialTable: ") + name + " sums to " +
                              std::to_string(block.sum()) + ", violating the 1 +- " +
                              std::to_string(sum_tol) + " invariant");
    }
}

}  // namespace

SequentialTable::SequentialTable(std::string first_question, std::string second_question,
                                 OrderBlock order_ab, OrderBlock order_ba, Provenance provenance)
    : first_(std::move(first_question)),
      second_(std::move(second_question)),
      ab_(order_ab),
      ba_(order_ba),
      provenance_(provenance) {
    const double tol = provenance_ == Provenance::Empirical ? kEmpiricalSumTol : kModelSumTol;
    validate_block(ab_, tol, "order_ab");
    validate_block(ba_, tol, "order_ba");
}

SequentialTable clinton_gore_table() {
    return SequentialTable("C", "G", {0.4899, 0.0447, 0.1767, 0.2887},
                           {0.5625, 0.1991, 0.0255, 0.2129}, Provenance::Empirical);
}

HilbertTwoQuestionModel::HilbertTwoQuestionModel(hilbert::StateVector s, hilbert::SpectralFamily a,
                                                 hilbert::SpectralFamily b)
    : state(std::move(s)), family_a(std::move(a)), family_b(std::move(b)) {
    if (family_a.size() != 2 || family_b.size() != 2) {
        throw InvalidArgument("HilbertTwoQuestionModel: families must have two outcomes");
    }
    if (family_a.dim() != state.dim() || family_b.dim() != state.dim()) {
        throw DimensionMismatch("HilbertTwoQuestionModel: family dimension differs from state");
    }
}

double compute_q(const SequentialTable& table) {
    return (table.order_ab().yy - table.order_ba().yy) +
           (table.order_ab().nn - table.order_ba().nn);
}

QPrime compute_q_prime(const SequentialTable& table) {
    const OrderBlock& ab = table.order_ab();
    const double value = ab.yn * ab.nn - ab.ny * ab.yy;
    return {value, std::abs(value) / 0.25};
}

SequentialTable predict_table(const HilbertTwoQuestionModel& model) {
    auto joint = [&](const SpectralFamily& first, std::size_t i, const SpectralFamily& second,
                     std::size_t j) {
        return hilbert::sequential_probability(model.state, {{first, i}, {second, j}});
    };
    const SpectralFamily& a = model.family_a;
    const SpectralFamily& b = model.family_b;
    OrderBlock ab{joint(a, 0, b, 0), joint(a, 0, b, 1), joint(a, 1, b, 0), joint(a, 1, b, 1)};
    OrderBlock ba{joint(b, 0, a, 0), joint(b, 0, a, 1), joint(b, 1, a, 0), joint(b, 1, a, 1)};
    return SequentialTable("A", "B", ab, ba, Provenance::ModelGenerated);
}

namespace {

OrderConditionals conditionals_of(const OrderBlock& block) {
    const double yes_marginal = block.yy + block.yn;
    const double no_marginal = block.ny + block.nn;
    if (yes_marginal <= 1e-9 || no_marginal <= 1e-9) {
        throw DegenerateMarginal("conditional_probabilities: first-question marginal below 1e-9");
    }
    return {block.yy / yes_marginal, block.yn / yes_marginal, block.ny / no_marginal,
            block.nn / no_marginal, yes_marginal};
}

}  // namespace

Conditionals conditional_probabilities(const SequentialTable& table) {
    return {conditionals_of(table.order_ab()), conditionals_of(table.order_ba())};
}

HilbertTwoQuestionModel make_two_question_model_2d(double state_theta, double state_phi,
                                                   double axis_a_theta, double axis_a_phi,
                                                   double axis_b_theta, double axis_b_phi) {
    auto bloch_ray = [](double theta, double phi) {
        Eigen::VectorXcd v(2);
        v(0) = std::complex<double>(std::cos(theta / 2.0), 0.0);
        v(1) = std::polar(std::sin(theta / 2.0), phi);
        return StateVector::normalized(v);
    };
    const StateVector state = bloch_ray(state_theta, state_phi);
    const Projector m_a = Projector::onto(bloch_ray(axis_a_theta, axis_a_phi));
    const Projector m_b = Projector::onto(bloch_ray(axis_b_theta, axis_b_phi));
    return HilbertTwoQuestionModel(state, SpectralFamily::yes_no(m_a),
                                   SpectralFamily::yes_no(m_b));
}

namespace {

double table_residual(const SequentialTable& predicted, const SequentialTable& target) {
    const auto pa = predicted.order_ab().as_array();
    const auto pb = predicted.order_ba().as_array();
    const auto ta = target.order_ab().as_array();
    const auto tb = target.order_ba().as_array();
    double ss = 0.0;
    for (int i = 0; i < 4; ++i) {
        ss += (pa[i] - ta[i]) * (pa[i] - ta[i]);
        ss += (pb[i] - tb[i]) * (pb[i] - tb[i]);
    }
    return ss;
}

}  // namespace

FitReport fit_hilbert_2d(const SequentialTable& table, const FitConfig& config) {
    auto objective = [&](const std::vector<double>& x) {
        const auto model = make_two_question_model_2d(x[0], x[1], x[2], x[3], x[4], x[5]);
        return table_residual(predict_table(model), table);
    };

    const double pi = 3.14159265358979323846;
    optim::NelderMeadOptions options;
    options.max_iterations = config.max_iterations;
    options.f_tol = 1e-24;
    options.x_tol = 1e-11;
    options.initial_step = 0.4;

    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    int total_iterations = 0;
    bool any_converged = false;

    for (int start = 0; start < config.restarts; ++start) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(start)));
        std::vector<double> x0(6);
        x0[0] = rng.uniform(0.0, pi);       // state polar
        x0[1] = rng.uniform(0.0, 2 * pi);   // state azimuth
        x0[2] = rng.uniform(0.0, pi);       // axis A polar
        x0[3] = rng.uniform(0.0, 2 * pi);   // axis A azimuth
        x0[4] = rng.uniform(0.0, pi);       // axis B polar
        x0[5] = rng.uniform(0.0, 2 * pi);   // axis B azimuth
        const auto result = optim::nelder_mead(objective, x0, options);
        total_iterations += result.iterations;
        any_converged = any_converged || result.converged;
        if (result.fmin < best_f) {
            best_f = result.fmin;
            best_x = result.x;
        }
        if (best_f < config.target_residual * config.target_residual) {
            break;
        }
    }

    const auto model =
        make_two_question_model_2d(best_x[0], best_x[1], best_x[2], best_x[3], best_x[4], best_x[5]);
    FitReport report{
        {{"state_theta", best_x[0]},
         {"state_phi", best_x[1]},
         {"axis_a_theta", best_x[2]},
         {"axis_a_phi", best_x[3]},
         {"axis_b_theta", best_x[4]},
         {"axis_b_phi", best_x[5]}},
        std::sqrt(best_f),
        predict_table(model),
        total_iterations,
        any_converged};
    return report;
}

}  // namespace qcog::order
