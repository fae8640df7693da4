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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qcog/rng.hpp"

using namespace qcog;
using namespace qcog::bloch;
using namespace qcog::hilbert;

namespace {

StateVector basis_state(Eigen::Index dim, Eigen::Index k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(k) = 1.0;
    return StateVector(v);
}

DensityMatrix random_mixed_state(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 1000));
    Matrix rho = Matrix::Zero(dim, dim);
    double total = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double w = rng.exponential();
        const StateVector psi = random_state(dim, derive_seed(seed, static_cast<std::uint64_t>(k)));
        rho += w * (psi.amplitudes() * psi.amplitudes().adjoint());
        total += w;
    }
    rho /= total;
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(rho);
}

// matched 2D Hilbert model for a membrane geometry (e_c, e_g, gamma):
// C axis along z, G axis at angle arccos(gamma) in the x-z plane, state the
// unit Bloch vector with the given axis coordinates
order::HilbertTwoQuestionModel hilbert_model_for_geometry(double e_c, double e_g, double gamma) {
    const double kappa = std::acos(gamma);
    const double x = (e_g - e_c * gamma) / std::sin(kappa);
    const double y_sq = 1.0 - x * x - e_c * e_c;
    REQUIRE(y_sq >= 0.0);
    const double state_theta = std::acos(e_c);
    const double state_phi = std::atan2(std::sqrt(y_sq), x);
    return order::make_two_question_model_2d(state_theta, state_phi, 0.0, 0.0, kappa, 0.0);
}

}  // namespace

TEST_CASE("generator basis construction") {
    for (Eigen::Index n = 2; n <= 6; ++n) {
        const GeneratorBasis basis(n);
        CHECK(basis.size() == static_cast<std::size_t>(n * n - 1));
        for (const auto& g : basis.generators()) {
            CHECK(std::abs(g.trace().real()) < 1e-12);
            CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    // n=2 ordering is (sigma_x, sigma_y, sigma_z)
    const GeneratorBasis pauli(2);
    CHECK(pauli[0](0, 1) == Complex(1.0, 0.0));
    CHECK(pauli[1](0, 1) == Complex(0.0, -1.0));
    CHECK(pauli[2](0, 0) == Complex(1.0, 0.0));
    CHECK(pauli[2](1, 1) == Complex(-1.0, 0.0));
}

TEST_CASE("state_to_bloch anchors") {
    const GeneratorBasis basis(2);
    const BlochPoint up = state_to_bloch(basis_state(2, 0), basis);
    CHECK(up.coords(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(up.coords(1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(up.coords(2) == doctest::Approx(1.0).epsilon(1e-14));

    const BlochPoint origin = state_to_bloch(DensityMatrix::maximally_mixed(2), basis);
    CHECK(origin.norm() < 1e-14);

    const GeneratorBasis basis3(3);
    CHECK(state_to_bloch(DensityMatrix::maximally_mixed(3), basis3).norm() < 1e-14);
}

TEST_CASE("pure states land on the unit sphere") {
    for (Eigen::Index n : {2, 3, 4}) {
        const GeneratorBasis basis(n);
        const double c_n = basis.pure_state_radius_scale();
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const StateVector psi = random_state(n, derive_seed(501, seed * 7 + n));
            const BlochPoint point = state_to_bloch(psi, basis);
            CHECK(std::abs(point.norm() - 1.0) < 1e-10);

            // cross-check one coordinate against an explicit trace loop
            const auto rho = oracles::from_eigen(
                Eigen::MatrixXcd(psi.amplitudes() * psi.amplitudes().adjoint()));
            const auto lambda = oracles::from_eigen(basis[0]);
            Complex trace(0, 0);
            for (std::size_t i = 0; i < rho.size(); ++i)
                for (std::size_t j = 0; j < rho.size(); ++j) trace += rho[i][j] * lambda[j][i];
            const double expected = static_cast<double>(n) / (2.0 * c_n) * trace.real();
            CHECK(point.coords(0) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("bloch_to_density inverts the representation") {
    const GeneratorBasis basis(2);

    SUBCASE("origin reconstructs the maximally mixed state") {
        const DensityMatrix rho = bloch_to_density({Eigen::Vector3d(0, 0, 0), 2}, basis);
        CHECK((rho.entries() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("north pole reconstructs |0><0|") {
        const DensityMatrix rho = bloch_to_density({Eigen::Vector3d(0, 0, 1), 2}, basis);
        Matrix expected = Matrix::Zero(2, 2);
        expected(0, 0) = 1.0;
        CHECK((rho.entries() - expected).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("round trip within 1e-10 on random mixed states") {
        for (Eigen::Index n : {2, 3, 4}) {
            const GeneratorBasis b(n);
            for (std::uint64_t seed = 0; seed < 30; ++seed) {
                const DensityMatrix rho = random_mixed_state(n, derive_seed(511, seed * 5 + n));
                const DensityMatrix back = bloch_to_density(state_to_bloch(rho, b), b);
                CHECK((rho.entries() - back.entries()).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }

    SUBCASE("the antipode of a pure state is outside the n=3 state body") {
        const GeneratorBasis b3(3);
        BlochPoint point = state_to_bloch(random_state(3, 521), b3);
        point.coords = -point.coords;
        CHECK_THROWS_AS(bloch_to_density(point, b3), NotAState);
    }
}

TEST_CASE("measurement simplexes") {
    SUBCASE("computational basis, n=2: antipodal poles") {
        const GeneratorBasis basis(2);
        const SpectralFamily family(
            {Projector::onto(basis_state(2, 0)), Projector::onto(basis_state(2, 1))});
        const MeasurementSimplex simplex = simplex_of(family, basis);
        CHECK(simplex.vertices()[0].coords(2) == doctest::Approx(1.0));
        CHECK(simplex.vertices()[1].coords(2) == doctest::Approx(-1.0));
    }

    SUBCASE("computational basis, n=3: pairwise dot -1/2") {
        const GeneratorBasis basis(3);
        const SpectralFamily family({Projector::onto(basis_state(3, 0)),
                                     Projector::onto(basis_state(3, 1)),
                                     Projector::onto(basis_state(3, 2))});
        const MeasurementSimplex simplex = simplex_of(family, basis);
        for (int j = 0; j < 3; ++j) {
            for (int k = j + 1; k < 3; ++k) {
                CHECK(simplex.vertices()[j].coords.dot(simplex.vertices()[k].coords) ==
                      doctest::Approx(-0.5).epsilon(1e-12));
            }
        }
    }

    SUBCASE("degenerate families are rejected") {
        const GeneratorBasis basis(3);
        const auto degenerate = random_spectral_family(3, {1, 2}, 531);
        CHECK_THROWS_AS(simplex_of(degenerate, basis), DegenerateFamily);
    }
}

TEST_CASE("uniform collapse equals the Born rule") {
    SUBCASE("particle at a vertex collapses there") {
        const GeneratorBasis basis(3);
        const auto family = random_spectral_family(3, {1, 1, 1}, 541);
        const MeasurementSimplex simplex = simplex_of(family, basis);
        const auto probabilities = collapse_probabilities_uniform(simplex.vertices()[1], simplex);
        CHECK(probabilities(1) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(probabilities(0) == doctest::Approx(0.0).epsilon(1e-10));
    }

    SUBCASE("maximally mixed particle splits evenly") {
        const GeneratorBasis basis(3);
        const auto family = random_spectral_family(3, {1, 1, 1}, 542);
        const auto probabilities = collapse_probabilities_uniform(
            state_to_bloch(DensityMatrix::maximally_mixed(3), basis), simplex_of(family, basis));
        for (int k = 0; k < 3; ++k) {
            CHECK(probabilities(k) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
        }
    }

    SUBCASE("matches born_probability over random cases") {
        double max_diff = 0.0;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
            const GeneratorBasis basis(n);
            const std::vector<int> ranks(static_cast<std::size_t>(n), 1);
            const auto family = random_spectral_family(n, ranks, derive_seed(551, seed));
            const StateVector psi = random_state(n, derive_seed(552, seed));
            const auto barycentric = collapse_probabilities_uniform(
                state_to_bloch(psi, basis), simplex_of(family, basis));
            for (std::size_t k = 0; k < family.size(); ++k) {
                max_diff = std::max(max_diff, std::abs(barycentric(static_cast<Eigen::Index>(k)) -
                                                       born_probability(psi, family[k])));
            }
        }
        CHECK(max_diff < 1e-10);
    }
}

TEST_CASE("membrane cdf") {
    CHECK(membrane_cdf(UniformMembrane{}, 0.0) == doctest::Approx(0.5));
    CHECK(membrane_cdf(UniformMembrane{}, -1.0) == doctest::Approx(0.0));
    CHECK(membrane_cdf(UniformMembrane{}, 1.0) == doctest::Approx(1.0));

    // the full-width interval is the uniform (Born) membrane
    for (double e = -1.0; e <= 1.0; e += 0.125) {
        CHECK(membrane_cdf(IntervalMembrane(-1.0, 1.0), e) ==
              doctest::Approx((1.0 + e) / 2.0).epsilon(1e-14));
    }

    CHECK(membrane_cdf(IntervalMembrane(-0.5, 1.0), 0.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(membrane_cdf(IntervalMembrane(-0.5, 0.5), -0.75) == doctest::Approx(0.0));
    CHECK(membrane_cdf(IntervalMembrane(-0.5, 0.5), 0.75) == doctest::Approx(1.0));

    CHECK_THROWS_AS(membrane_cdf(UniformMembrane{}, 1.5), InvalidArgument);
    CHECK_THROWS_AS(IntervalMembrane(0.5, 0.5), InvalidArgument);
    CHECK_THROWS_AS(IntervalMembrane(-2.0, 0.5), InvalidArgument);

    SUBCASE("piecewise membranes are proper CDFs and nondecreasing") {
        Rng rng(561);
        for (int trial = 0; trial < 50; ++trial) {
            const PiecewiseConstantMembrane membrane = sample_piecewise_membrane(rng);
            CHECK(membrane_cdf(membrane, -1.0) == doctest::Approx(0.0));
            CHECK(membrane_cdf(membrane, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
            double previous = 0.0;
            for (double e = -1.0; e <= 1.0; e += 0.05) {
                const double value = membrane_cdf(membrane, e);
                CHECK(value >= previous - 1e-12);
                previous = value;
            }
        }
    }
}

TEST_CASE("membrane collapse probabilities and sampling") {
    const IntervalMembrane membrane(-0.4, 0.6);

    SUBCASE("deterministic regions support response replicability") {
        CHECK(collapse_probabilities_membrane(0.6, membrane).yes == doctest::Approx(1.0));
        CHECK(collapse_probabilities_membrane(0.9, membrane).yes == doctest::Approx(1.0));
        CHECK(collapse_probabilities_membrane(-0.4, membrane).yes == doctest::Approx(0.0));
        CHECK(collapse_probabilities_membrane(-0.9, membrane).yes == doctest::Approx(0.0));
    }

    SUBCASE("sampling reproduces the analytic CDF") {
        const int draws = 1000000;
        const double e = 0.1;
        const double expected = membrane_cdf(RhoMembrane(membrane), e);
        int yes = 0;
        for (int i = 0; i < draws; ++i) {
            const auto sample =
                sample_collapse(e, membrane, derive_seed(571, static_cast<std::uint64_t>(i)));
            yes += sample.outcome == 0 ? 1 : 0;
        }
        const double frequency = static_cast<double>(yes) / draws;
        const double sigma = std::sqrt(expected * (1.0 - expected) / draws);
        CHECK(std::abs(frequency - expected) < 3.0 * sigma);
        CHECK(std::abs(frequency - expected) < 0.002);
    }

    SUBCASE("sampling is deterministic in the seed") {
        const auto a = sample_collapse(0.1, membrane, 581);
        const auto b = sample_collapse(0.1, membrane, 581);
        CHECK(a.outcome == b.outcome);
        CHECK(a.post_coordinate == b.post_coordinate);
        CHECK(sample_collapse(1.0, IntervalMembrane(-1.0, 1.0), 582).outcome == 0);
    }
}

TEST_CASE("universal measurements average out to the Born rule") {
    SUBCASE("symmetric point") {
        const double average = universal_measurement_probability(0.0, 100000, 591);
        CHECK(std::abs(average - 0.5) < 0.005);
    }
    SUBCASE("boundary is exact for every membrane") {
        CHECK(universal_measurement_probability(1.0, 1000, 592) == doctest::Approx(1.0));
        CHECK(universal_measurement_probability(-1.0, 1000, 593) == doctest::Approx(0.0));
    }
    SUBCASE("the first-question marginal of the reversed-order block") {
        // e chosen so that (1+e)/2 = 0.7616
        const double average = universal_measurement_probability(0.5232, 100000, 594);
        CHECK(std::abs(average - 0.7616) < 0.01);
    }
}

TEST_CASE("membrane model geometry validation") {
    CHECK_NOTHROW(MembraneTwoQuestionModel(0.3, 0.5, 0.6, UniformMembrane{}, UniformMembrane{}));
    // e_c = 1 and e_g = -1 require antiparallel axes, so gamma = 0.9 is infeasible
    CHECK_THROWS_AS(MembraneTwoQuestionModel(1.0, -1.0, 0.9, UniformMembrane{}, UniformMembrane{}),
                    InconsistentGeometry);
    CHECK_THROWS_AS(MembraneTwoQuestionModel(1.5, 0.0, 0.0, UniformMembrane{}, UniformMembrane{}),
                    InconsistentGeometry);
}

TEST_CASE("uniform membranes reproduce the matched Hilbert model") {
    for (const auto& [e_c, e_g, gamma] :
         {std::tuple{0.3, 0.5, 0.6}, std::tuple{-0.2, 0.4, 0.35}, std::tuple{0.1, -0.6, -0.5}}) {
        const MembraneTwoQuestionModel membrane_model(e_c, e_g, gamma, UniformMembrane{},
                                                      UniformMembrane{});
        const auto membrane_table = predict_membrane_table(membrane_model);
        const auto hilbert_table =
            order::predict_table(hilbert_model_for_geometry(e_c, e_g, gamma));
        const auto ma = membrane_table.order_ab().as_array();
        const auto ha = hilbert_table.order_ab().as_array();
        const auto mb = membrane_table.order_ba().as_array();
        const auto hb = hilbert_table.order_ba().as_array();
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(ma[i] - ha[i]) < 1e-12);
            CHECK(std::abs(mb[i] - hb[i]) < 1e-12);
        }
        // and therefore the QQ quantities vanish
        CHECK(std::abs(order::compute_q(membrane_table)) < 1e-12);
        CHECK(std::abs(order::compute_q_prime(membrane_table).value) < 1e-12);
    }
}

TEST_CASE("aligned axes repeat the first answer") {
    const MembraneTwoQuestionModel model(0.3, 0.3, 1.0, UniformMembrane{}, UniformMembrane{});
    const auto table = predict_membrane_table(model);
    CHECK(table.order_ab().yn == doctest::Approx(0.0));
    CHECK(table.order_ab().ny == doctest::Approx(0.0));
    CHECK(table.order_ba().yn == doctest::Approx(0.0));
    CHECK(table.order_ba().ny == doctest::Approx(0.0));
}

TEST_CASE("interval membranes can violate the QQ-equality") {
    const MembraneTwoQuestionModel model(0.2, 0.15, 0.4, IntervalMembrane(-0.5, 0.75),
                                         IntervalMembrane(-0.9, 0.3));
    const auto table = predict_membrane_table(model);
    CHECK(std::abs(order::compute_q(table)) > 1e-3);
}

TEST_CASE("fit_membrane reproduces the published table exactly") {
    const auto table = order::clinton_gore_table();
    const auto report = fit_membrane(table);
    CHECK(report.residual < 1e-4);
    CHECK(report.converged);

    // the fitted model reproduces the published q and q' signatures
    CHECK(order::compute_q(report.predicted) == doctest::Approx(0.0032).epsilon(1e-3));
    CHECK(order::compute_q_prime(report.predicted).value ==
          doctest::Approx(-0.07366044).epsilon(1e-2));

    // parameters reconstruct a valid model
    const auto model = membrane_model_from_parameters(report.parameters);
    const auto replay = predict_membrane_table(model);
    CHECK(std::abs(replay.order_ab().yy - report.predicted.order_ab().yy) < 1e-12);
}

TEST_CASE("fit_membrane on a Born-consistent table recovers uniform membranes") {
    const MembraneTwoQuestionModel born_model(0.3, 0.5, 0.6, UniformMembrane{}, UniformMembrane{});
    const auto table = predict_membrane_table(born_model);
    const auto report = fit_membrane(table);
    CHECK(report.residual < 1e-6);
    CHECK(report.parameters.at("a_c") == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(report.parameters.at("b_c") == doctest::Approx(1.0).epsilon(0.05));
    CHECK(report.parameters.at("a_g") == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(report.parameters.at("b_g") == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("replicability simulation") {
    const MembraneTwoQuestionModel model(0.2, 0.3, 0.5, UniformMembrane{}, UniformMembrane{});
    const std::vector<Question> gcg = {Question::G, Question::C, Question::G};

    SUBCASE("memory policy forces exact repetition") {
        const auto stats =
            simulate_replicability(model, gcg, 10000, ReplicabilityPolicy::Memory, 601);
        CHECK(stats.repeat_agreement == doctest::Approx(1.0));
        for (const auto& [outcomes, count] : stats.counts) {
            CHECK(outcomes[0] == outcomes[2]);
            (void)count;
        }
    }

    SUBCASE("memoryless sampling matches the analytic branch value") {
        const auto stats =
            simulate_replicability(model, gcg, 200000, ReplicabilityPolicy::Memoryless, 602);
        auto f = [](double x) { return (1.0 + x) / 2.0; };
        const double g = model.gamma, e_g = model.e_g;
        // condition on the first G answer, then on the interleaved C answer
        const double agree_given_yes = f(g) * f(g) + (1.0 - f(g)) * f(-g);
        const double agree_given_no =
            f(-g) * (1.0 - f(g)) + (1.0 - f(-g)) * (1.0 - f(-g));
        const double expected = f(e_g) * agree_given_yes + (1.0 - f(e_g)) * agree_given_no;
        const double sigma = std::sqrt(expected * (1.0 - expected) / stats.participants);
        CHECK(std::abs(stats.repeat_agreement - expected) < 3.0 * sigma);
        CHECK(stats.repeat_agreement < 1.0 - 1e-3);
    }

    SUBCASE("aligned axes give certain agreement under both policies") {
        const MembraneTwoQuestionModel aligned(0.3, 0.3, 1.0, UniformMembrane{},
                                               UniformMembrane{});
        for (auto policy : {ReplicabilityPolicy::Memory, ReplicabilityPolicy::Memoryless}) {
            const auto stats = simulate_replicability(aligned, gcg, 2000, policy, 603);
            CHECK(stats.repeat_agreement == doctest::Approx(1.0));
        }
    }

    SUBCASE("determinism in the seed") {
        const auto a = simulate_replicability(model, gcg, 500, ReplicabilityPolicy::Memoryless, 604);
        const auto b = simulate_replicability(model, gcg, 500, ReplicabilityPolicy::Memoryless, 604);
        CHECK(a.counts == b.counts);
    }
}
