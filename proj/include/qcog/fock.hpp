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

#ifndef QCOG_FOCK_HPP
#define QCOG_FOCK_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcog/common.hpp"

namespace qcog::fock {

enum class Combination { Conjunction, Disjunction };

/// One item's membership weights for two concepts and their combination.
struct MembershipRecord {
    std::string item;
    double mu_a;
    double mu_b;
    double mu_comb;
    Combination combination;

    MembershipRecord(std::string item_, double mu_a_, double mu_b_, double mu_comb_,
                     Combination combination_);
};

/// Two-sector weights: sector one carries emergence (superposition with
/// interference phase theta), sector two carries the classical logical
/// calculus; m2 + n2 = 1 by construction.
struct FockParameters {
    double theta;  // in [0, pi]
    double m2;     // second-sector (logic) weight in [0,1]

    FockParameters(double theta_, double m2_);
    double n2() const { return 1.0 - m2; }
};

struct CombinationWeight {
    double value;    // clamped to [0,1]
    double raw;      // unclamped two-sector value
    bool in_range;   // raw already within [0,1]
};

/// Two-sector membership weight:
///   conjunction:  m2 * mu_a mu_b          + n2 * ((mu_a+mu_b)/2 + sqrt(mu_a mu_b) cos theta)
///   disjunction:  m2 * (mu_a+mu_b-mu_a mu_b) + n2 * (same emergence term)
CombinationWeight fock_combination_weight(double mu_a, double mu_b, const FockParameters& params,
                                          Combination combination);

/// The classical (sector-two) value alone.
double classical_combination_weight(double mu_a, double mu_b, Combination combination);

/// Inverts the two-sector formula: parameters reproducing mu_comb within
/// 1e-9, preferring the largest m2 (the most classical explanation).
/// Empty when mu_comb lies outside the attainable envelope.
std::optional<FockParameters> solve_fock_parameters(const MembershipRecord& record);

enum class ExtensionClass {
    Classical,
    Overextension,
    DoubleOverextension,
    Underextension,
    DoubleUnderextension,
};

const char* to_string(ExtensionClass c);

/// Conjunction: overextended iff mu_comb exceeds the smaller membership,
/// doubly iff it exceeds both. Disjunction: dually with underextension.
ExtensionClass classify_extension(const MembershipRecord& record);

enum class KolmogorovBound {
    ConjunctionLower,  // mu_comb >= max(0, mu_a + mu_b - 1)
    ConjunctionUpper,  // mu_comb <= min(mu_a, mu_b)
    DisjunctionLower,  // mu_comb >= max(mu_a, mu_b)
    DisjunctionUpper,  // mu_comb <= min(1, mu_a + mu_b)
};

const char* to_string(KolmogorovBound bound);

struct KolmogorovCheck {
    bool representable;
    std::vector<KolmogorovBound> violated;
};

/// Whether a single classical probability space can carry all three weights.
KolmogorovCheck kolmogorov_representable(const MembershipRecord& record);

/// Joint outcome probabilities of one coincidence measurement.
struct JointOutcomeTable {
    double pp;
    double pm;
    double mp;
    double mm;

    double expectation() const { return pp + mm - pm - mp; }
};

/// The four expectation values of a 2x2-settings Bell-type experiment.
class JointCorrelationSet {
  public:
    /// From explicit expectation values in [-1,1].
    JointCorrelationSet(double e11, double e12, double e21, double e22);
    /// From normalized joint probability tables.
    static JointCorrelationSet from_tables(const JointOutcomeTable& t11,
                                           const JointOutcomeTable& t12,
                                           const JointOutcomeTable& t21,
                                           const JointOutcomeTable& t22);

    double e11() const { return e_[0]; }
    double e12() const { return e_[1]; }
    double e21() const { return e_[2]; }
    double e22() const { return e_[3]; }

  private:
    std::array<double, 4> e_;
};

struct ChshResult {
    double s;                // E11 + E12 + E21 - E22
    bool violated;           // |S| > 2
    bool tsirelson_excess;   // |S| > 2 sqrt(2)
};

ChshResult chsh_value(const JointCorrelationSet& correlations);

/// Occupation statistics of N indistinguishable-or-not concepts over M cells.
struct OccupationStatistics {
    int n = 0;
    int m = 0;
    /// All occupation configurations (n_1..n_M summing to N), first cell
    /// descending.
    std::vector<std::vector<int>> configurations;
    std::vector<double> maxwell_boltzmann;  // multinomial weights, uniform cells
    std::vector<double> bose_einstein;      // uniform over configurations
};

/// Throws TooLarge when the configuration count exceeds max_configurations.
OccupationStatistics identical_concepts_distributions(int n, int m,
                                                      std::int64_t max_configurations = 1000000);

/// Log-likelihood of empirical configuration counts under a distribution
/// (aligned with OccupationStatistics::configurations).
double log_likelihood(const std::vector<std::uint64_t>& counts,
                      const std::vector<double>& distribution);

}  // namespace qcog::fock

#endif  // QCOG_FOCK_HPP
