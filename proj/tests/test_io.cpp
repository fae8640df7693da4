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

#include "qcog/io.hpp"

#include "doctest.h"

using namespace qcog;
using namespace qcog::io;

TEST_CASE("the bundled table carries the published values verbatim") {
    const Dataset dataset =
        load_dataset(std::string(QCOG_DATA_DIR) + "/clinton_gore.json", DatasetKind::Sequential);
    const auto& table = std::get<order::SequentialTable>(dataset.payload);
    CHECK(table.first_question() == "C");
    CHECK(table.second_question() == "G");
    CHECK(table.order_ab().yy == 0.4899);
    CHECK(table.order_ab().yn == 0.0447);
    CHECK(table.order_ab().ny == 0.1767);
    CHECK(table.order_ab().nn == 0.2887);
    CHECK(table.order_ba().yy == 0.5625);
    CHECK(table.order_ba().yn == 0.1991);
    CHECK(table.order_ba().ny == 0.0255);
    CHECK(table.order_ba().nn == 0.2129);
    CHECK(table.provenance() == order::Provenance::Empirical);
}

TEST_CASE("sequential table schema validation") {
    Json bad = Json::parse(R"({
        "questions": ["C", "G"],
        "order_CG": {"yy": 1.2, "yn": -0.2, "ny": 0.0, "nn": 0.0},
        "order_GC": {"yy": 0.25, "yn": 0.25, "ny": 0.25, "nn": 0.25}
    })");
    CHECK_THROWS_AS(parse_sequential_table(bad), ParseError);

    Json missing = Json::parse(R"({"questions": ["C", "G"], "order_CG": {}})");
    CHECK_THROWS_AS(parse_sequential_table(missing), ParseError);

    Json wrong_sum = Json::parse(R"({
        "questions": ["A", "B"],
        "order_AB": {"yy": 0.5, "yn": 0.4, "ny": 0.3, "nn": 0.2},
        "order_BA": {"yy": 0.25, "yn": 0.25, "ny": 0.25, "nn": 0.25}
    })");
    CHECK_THROWS_AS(parse_sequential_table(wrong_sum), ParseError);
}

TEST_CASE("sequential table json round trip") {
    const auto table = order::clinton_gore_table();
    const auto replay = parse_sequential_table(sequential_table_to_json(table));
    CHECK(replay.order_ab().yy == table.order_ab().yy);
    CHECK(replay.order_ba().nn == table.order_ba().nn);
    CHECK(replay.first_question() == table.first_question());
}

TEST_CASE("membership csv parsing") {
    const std::string good =
        "item,mu_a,mu_b,mu_comb,combination\n"
        "Mint,0.7,0.6,0.8,conjunction\n"
        "Ashtray,0.8,0.7,0.5,disjunction\n";
    const auto records = parse_membership_csv(good);
    REQUIRE(records.size() == 2);
    CHECK(records[0].item == "Mint");
    CHECK(records[0].mu_comb == 0.8);
    CHECK(records[1].combination == fock::Combination::Disjunction);

    CHECK_THROWS_AS(parse_membership_csv("wrong,header\n"), ParseError);
    CHECK_THROWS_AS(
        parse_membership_csv("item,mu_a,mu_b,mu_comb,combination\nx,0.5,0.5,0.5,union\n"),
        ParseError);
    CHECK_THROWS_AS(
        parse_membership_csv("item,mu_a,mu_b,mu_comb,combination\nx,1.5,0.5,0.5,conjunction\n"),
        ParseError);
    CHECK_THROWS_AS(parse_membership_csv("item,mu_a,mu_b,mu_comb,combination\n"), ParseError);
}

TEST_CASE("correlations parsing") {
    const Dataset dataset = load_dataset(
        std::string(QCOG_DATA_DIR) + "/singlet_correlations.json", DatasetKind::Correlations);
    const auto& correlations = std::get<fock::JointCorrelationSet>(dataset.payload);
    const auto result = fock::chsh_value(correlations);
    CHECK(result.s == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(parse_correlations(Json::parse(R"({"11": {"pp": 1}})")), ParseError);
}

TEST_CASE("occupation counts parsing") {
    const auto counts = parse_occupation_counts(Json::parse(R"({"N": 11, "M": 2})"));
    CHECK(counts.n == 11);
    CHECK(counts.counts.empty());
    CHECK_THROWS_AS(parse_occupation_counts(Json::parse(R"({"N": 0, "M": 2})")), ParseError);
}

TEST_CASE("membrane model json round trip") {
    const auto model =
        load_membrane_model(std::string(QCOG_DATA_DIR) + "/membrane_model_example.json");
    CHECK(model.e_c == 0.2);
    CHECK(model.gamma == 0.5);

    const bloch::MembraneTwoQuestionModel interval_model(
        0.1, 0.2, 0.3, bloch::IntervalMembrane(-0.5, 0.75), bloch::UniformMembrane{});
    const auto replay = parse_membrane_model(membrane_model_to_json(interval_model));
    CHECK(std::get<bloch::IntervalMembrane>(replay.membrane_c).a == -0.5);
    CHECK(std::get<bloch::IntervalMembrane>(replay.membrane_c).b == 0.75);

    Json infeasible = membrane_model_to_json(interval_model);
    infeasible["e_c"] = 1.0;
    infeasible["e_g"] = -1.0;
    infeasible["gamma"] = 0.9;
    CHECK_THROWS_AS(parse_membrane_model(infeasible), ParseError);
}

TEST_CASE("reports serialize deterministically") {
    Json results;
    results["q"] = 0.0032;
    results["values"] = {1.0 / 3.0, 2.0 / 3.0};
    const Report a = make_report("diagnose", digest_bytes("payload"), results, 42);
    const Report b = make_report("diagnose", digest_bytes("payload"), results, 42);
    CHECK(a.to_json().dump(2) == b.to_json().dump(2));
    CHECK(a.to_json()["tool_version"] == kToolVersion);
    CHECK(a.to_json()["seed"] == 42);

    // digest is content-addressed and stable
    CHECK(digest_bytes("payload") == digest_bytes("payload"));
    CHECK(digest_bytes("payload") != digest_bytes("payloat"));
    CHECK(digest_bytes("").rfind("fnv1a64:", 0) == 0);
}
