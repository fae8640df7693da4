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

#include "qcog/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcog::fock {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSolveTol = 1e-9;

void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidArgument(std::string(name) + " must lie in [0,1]");
    }
}

}  // namespace

MembershipRecord::MembershipRecord(std::string item_, double mu_a_, double mu_b_, double mu_comb_,
                                   Combination combination_)
    : item(std::move(item_)), mu_a(mu_a_), mu_b(mu_b_), mu_comb(mu_comb_),
      combination(combination_) {
    require_probability(mu_a, "mu_a");
    require_probability(mu_b, "mu_b");
    require_probability(mu_comb, "mu_comb");
}

FockParameters::FockParameters(double theta_, double m2_) : theta(theta_), m2(m2_) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw InvalidArgument("FockParameters: theta must lie in [0, pi]");
    }
    require_probability(m2, "m2");
}

double classical_combination_weight(double mu_a, double mu_b, Combination combination) {
    return combination == Combination::Conjunction ? mu_a * mu_b
                                                   : mu_a + mu_b - mu_a * mu_b;
}

CombinationWeight fock_combination_weight(double mu_a, double mu_b, const FockParameters& params,
                                          Combination combination) {
    require_probability(mu_a, "mu_a");
    require_probability(mu_b, "mu_b");
    const double logic = classical_combination_weight(mu_a, mu_b, combination);
    const double emergence =
        (mu_a + mu_b) / 2.0 + std::sqrt(mu_a * mu_b) * std::cos(params.theta);
    const double raw = params.m2 * logic + params.n2() * emergence;
    const bool in_range = raw >= 0.0 && raw <= 1.0;
    return {std::clamp(raw, 0.0, 1.0), raw, in_range};
}

std::optional<FockParameters> solve_fock_parameters(const MembershipRecord& record) {
    const double logic =
        classical_combination_weight(record.mu_a, record.mu_b, record.combination);
    const double average = (record.mu_a + record.mu_b) / 2.0;
    const double interference = std::sqrt(record.mu_a * record.mu_b);
    const double target = record.mu_comb;

    if (std::abs(target - logic) <= kSolveTol) {
        return FockParameters(kPi / 2.0, 1.0);
    }

    // value(m2, theta) = m2*logic + (1-m2)*(average + interference*cos theta);
    // the largest feasible m2 sits on the emergence envelope nearest the target
    const double envelope = target > logic ? average + interference : average - interference;
    const double denominator = envelope - logic;
    if (std::abs(denominator) < 1e-15) {
        return std::nullopt;
    }
    const double m2 = (envelope - target) / denominator;
    if (m2 < -kSolveTol || m2 > 1.0 + kSolveTol) {
        return std::nullopt;
    }
    const FockParameters params(target > logic ? 0.0 : kPi, std::clamp(m2, 0.0, 1.0));
    const double check =
        fock_combination_weight(record.mu_a, record.mu_b, params, record.combination).raw;
    if (std::abs(check - target) > kSolveTol) {
        return std::nullopt;
    }
    return params;
}

const char* to_string(ExtensionClass c) {
    switch (c) {
        case ExtensionClass::Classical: return "classical";
        case ExtensionClass::Overextension: return "overextension";
        case ExtensionClass::DoubleOverextension: return "double_overextension";
        case ExtensionClass::Underextension: return "underextension";
        case ExtensionClass::DoubleUnderextension: return "double_underextension";
    }
    return "unknown";
}

ExtensionClass classify_extension(const MembershipRecord& record) {
    constexpr double tie = 1e-12;
    const double lo = std::min(record.mu_a, record.mu_b);
    const double hi = std::max(record.mu_a, record.mu_b);
    if (record.combination == Combination::Conjunction) {
        if (record.mu_comb > hi + tie) return ExtensionClass::DoubleOverextension;
        if (record.mu_comb > lo + tie) return ExtensionClass::Overextension;
        return ExtensionClass::Classical;
    }
    if (record.mu_comb < lo - tie) return ExtensionClass::DoubleUnderextension;
    if (record.mu_comb < hi - tie) return ExtensionClass::Underextension;
    return ExtensionClass::Classical;
}

const char* to_string(KolmogorovBound bound) {
    switch (bound) {
        case KolmogorovBound::ConjunctionLower: return "conjunction_lower";
        case KolmogorovBound::ConjunctionUpper: return "conjunction_upper";
        case KolmogorovBound::DisjunctionLower: return "disjunction_lower";
        case KolmogorovBound::DisjunctionUpper: return "disjunction_upper";
    }
    return "unknown";
}

KolmogorovCheck kolmogorov_representable(const MembershipRecord& record) {
    constexpr double tie = 1e-12;  // the bounds are closed inequalities
    KolmogorovCheck check{true, {}};
    if (record.combination == Combination::Conjunction) {
        if (record.mu_comb < std::max(0.0, record.mu_a + record.mu_b - 1.0) - tie) {
            check.violated.push_back(KolmogorovBound::ConjunctionLower);
        }
        if (record.mu_comb > std::min(record.mu_a, record.mu_b) + tie) {
            check.violated.push_back(KolmogorovBound::ConjunctionUpper);
        }
    } else {
        if (record.mu_comb < std::max(record.mu_a, record.mu_b) - tie) {
            check.violated.push_back(KolmogorovBound::DisjunctionLower);
        }
        if (record.mu_comb > std::min(1.0, record.mu_a + record.mu_b) + tie) {
            check.violated.push_back(KolmogorovBound::DisjunctionUpper);
        }
    }
    check.representable = check.violated.empty();
    return check;
}

JointCorrelationSet::JointCorrelationSet(double e11, double e12, double e21, double e22)
    : e_{e11, e12, e21, e22} {
    for (double e : e_) {
        if (!(e >= -1.0 && e <= 1.0)) {
            throw InvalidArgument("JointCorrelationSet: expectation values must lie in [-1,1]");
        }
    }
}

JointCorrelationSet JointCorrelationSet::from_tables(const JointOutcomeTable& t11,
                                                     const JointOutcomeTable& t12,
                                                     const JointOutcomeTable& t21,
                                                     const JointOutcomeTable& t22) {
    for (const auto* t : {&t11, &t12, &t21, &t22}) {
        for (double p : {t->pp, t->pm, t->mp, t->mm}) {
            require_probability(p, "joint outcome probability");
        }
        if (std::abs(t->pp + t->pm + t->mp + t->mm - 1.0) > 1e-9) {
            throw InvalidArgument("JointCorrelationSet: outcome table not normalized");
        }
    }
    return JointCorrelationSet(t11.expectation(), t12.expectation(), t21.expectation(),
                               t22.expectation());
}

ChshResult chsh_value(const JointCorrelationSet& correlations) {
    const double s = correlations.e11() + correlations.e12() + correlations.e21() -
                     correlations.e22();
    const double magnitude = std::abs(s);
    return {s, magnitude > 2.0, magnitude > 2.0 * std::sqrt(2.0)};
}

namespace {

void enumerate_configurations(int remaining, int cells_left, std::vector<int>& prefix,
                              std::vector<std::vector<int>>& out) {
    if (cells_left == 1) {
        prefix.push_back(remaining);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        prefix.push_back(k);
        enumerate_configurations(remaining - k, cells_left - 1, prefix, out);
        prefix.pop_back();
    }
}

std::int64_t configuration_count(int n, int m) {
    // C(n + m - 1, m - 1)
    std::int64_t result = 1;
    for (int i = 1; i <= m - 1; ++i) {
        result = result * (n + i) / i;
    }
    return result;
}

}  // namespace

OccupationStatistics identical_concepts_distributions(int n, int m,
                                                      std::int64_t max_configurations) {
    if (n < 1 || m < 2) {
        throw InvalidArgument("identical_concepts_distributions: need N >= 1, M >= 2");
    }
    const std::int64_t count = configuration_count(n, m);
    if (count > max_configurations) {
        throw TooLarge("identical_concepts_distributions: " + std::to_string(count) +
                       " configurations exceed the cap of " +
                       std::to_string(max_configurations));
    }

    OccupationStatistics stats;
    stats.n = n;
    stats.m = m;
    std::vector<int> prefix;
    enumerate_configurations(n, m, prefix, stats.configurations);

    const double log_m = std::log(static_cast<double>(m));
    const double be_weight = 1.0 / static_cast<double>(count);
    stats.maxwell_boltzmann.reserve(stats.configurations.size());
    stats.bose_einstein.assign(stats.configurations.size(), be_weight);
    for (const auto& config : stats.configurations) {
        double log_weight = std::lgamma(static_cast<double>(n) + 1.0) - n * log_m;
        for (int occupancy : config) {
            log_weight -= std::lgamma(static_cast<double>(occupancy) + 1.0);
        }
        stats.maxwell_boltzmann.push_back(std::exp(log_weight));
    }
    return stats;
}

double log_likelihood(const std::vector<std::uint64_t>& counts,
                      const std::vector<double>& distribution) {
    if (counts.size() != distribution.size()) {
        throw InvalidArgument("log_likelihood: counts and distribution sizes differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        if (distribution[i] <= 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        total += static_cast<double>(counts[i]) * std::log(distribution[i]);
    }
    return total;
}

}  // namespace qcog::fock
