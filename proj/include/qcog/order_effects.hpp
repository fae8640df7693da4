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

#ifndef QCOG_ORDER_EFFECTS_HPP
#define QCOG_ORDER_EFFECTS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "qcog/hilbert.hpp"

namespace qcog::order {

/// The four joint probabilities of one asking order, indexed by the answers
/// (first question, second question).
struct OrderBlock {
    double yy = 0.0;
    double yn = 0.0;
    double ny = 0.0;
    double nn = 0.0;

    double sum() const { return yy + yn + ny + nn; }
    std::array<double, 4> as_array() const { return {yy, yn, ny, nn}; }
};

enum class Provenance { Empirical, ModelGenerated };

/// The eight joint probabilities of a two-question, two-order experiment.
/// order_ab holds the block where question `first` was asked first.
class SequentialTable {
  public:
    SequentialTable(std::string first_question, std::string second_question, OrderBlock order_ab,
                    OrderBlock order_ba, Provenance provenance);

    const std::string& first_question() const { return first_; }
    const std::string& second_question() const { return second_; }
    const OrderBlock& order_ab() const { return ab_; }
    const OrderBlock& order_ba() const { return ba_; }
    Provenance provenance() const { return provenance_; }

  private:
    std::string first_;
    std::string second_;
    OrderBlock ab_;
    OrderBlock ba_;
    Provenance provenance_;
};

/// The published Clinton/Gore sequential probabilities (first block: Clinton
/// asked first), stored verbatim to four decimals.
SequentialTable clinton_gore_table();

/// State plus two two-outcome measurement contexts over a shared space.
struct HilbertTwoQuestionModel {
    hilbert::StateVector state;
    hilbert::SpectralFamily family_a;
    hilbert::SpectralFamily family_b;

    HilbertTwoQuestionModel(hilbert::StateVector s, hilbert::SpectralFamily a,
                            hilbert::SpectralFamily b);
    Eigen::Index dim() const { return state.dim(); }
};

/// q = (mu_AyBy - mu_ByAy) + (mu_AnBn - mu_BnAn), the first-asked order minus
/// the reversed one; identically zero for every projective-model table.
double compute_q(const SequentialTable& table);

struct QPrime {
    double value = 0.0;
    double ratio_of_max = 0.0;  // |value| / 0.25, the quoted attainable maximum
};

/// q' = mu_AyBn*mu_AnBn - mu_AnBy*mu_AyBy on the first-asked order block;
/// identically zero for 2D rank-1 models, nonzero in higher dimensions.
QPrime compute_q_prime(const SequentialTable& table);

/// All eight sequential probabilities of the model, both orders.
SequentialTable predict_table(const HilbertTwoQuestionModel& model);

/// P(second answer | first answer) for one asking order.
struct OrderConditionals {
    double second_yes_given_yes = 0.0;
    double second_no_given_yes = 0.0;
    double second_yes_given_no = 0.0;
    double second_no_given_no = 0.0;
    double first_yes_marginal = 0.0;
};

struct Conditionals {
    OrderConditionals ab;
    OrderConditionals ba;
};

/// Throws DegenerateMarginal when a first-question marginal is below 1e-9.
Conditionals conditional_probabilities(const SequentialTable& table);

struct FitConfig {
    int restarts = 32;
    std::uint64_t seed = 20260809;
    int max_iterations = 4000;
    double target_residual = 1e-10;  // early exit once reached
};

struct FitReport {
    std::map<std::string, double> parameters;
    double residual = 0.0;  // sqrt of the sum of squared errors over 8 entries
    SequentialTable predicted;
    int iterations = 0;
    bool converged = false;
};

/// Least-squares search for the 2D rank-1 Hilbert model closest to the table:
/// six angles (state and the two projector axes), multi-start Nelder-Mead.
FitReport fit_hilbert_2d(const SequentialTable& table, const FitConfig& config = {});

/// Builds the 2D rank-1 model for explicit angles; exposed for round-trip
/// tests and for reconstructing a fit result.
HilbertTwoQuestionModel make_two_question_model_2d(double state_theta, double state_phi,
                                                   double axis_a_theta, double axis_a_phi,
                                                   double axis_b_theta, double axis_b_phi);

}  // namespace qcog::order

#endif  // QCOG_ORDER_EFFECTS_HPP
