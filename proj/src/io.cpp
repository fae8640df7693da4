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

#include <fstream>
#include <sstream>

namespace qcog::io {

namespace {

double get_probability(const Json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ParseError(where + ": missing numeric field '" + key + "'");
    }
    const double v = j[key].get<double>();
    if (v < 0.0 || v > 1.0) {
        throw ParseError(where + ": field '" + key + "' = " + std::to_string(v) +
                         " outside [0,1]");
    }
    return v;
}

order::OrderBlock parse_block(const Json& j, const std::string& where) {
    return {get_probability(j, "yy", where), get_probability(j, "yn", where),
            get_probability(j, "ny", where), get_probability(j, "nn", where)};
}

}  // namespace

order::SequentialTable parse_sequential_table(const Json& j) {
    if (!j.contains("questions") || !j["questions"].is_array() || j["questions"].size() != 2) {
        throw ParseError("sequential table: 'questions' must be a pair of names");
    }
    const std::string first = j["questions"][0].get<std::string>();
    const std::string second = j["questions"][1].get<std::string>();
    const std::string key_ab = "order_" + first + second;
    const std::string key_ba = "order_" + second + first;
    if (!j.contains(key_ab) || !j.contains(key_ba)) {
        throw ParseError("sequential table: expected blocks '" + key_ab + "' and '" + key_ba +
                         "'");
    }
    auto provenance = order::Provenance::Empirical;
    if (j.contains("provenance")) {
        const std::string p = j["provenance"].get<std::string>();
        if (p == "model") {
            provenance = order::Provenance::ModelGenerated;
        } else if (p != "empirical") {
            throw ParseError("sequential table: provenance must be 'empirical' or 'model'");
        }
    }
    try {
        return order::SequentialTable(first, second, parse_block(j[key_ab], key_ab),
                                      parse_block(j[key_ba], key_ba), provenance);
    } catch (const InvalidArgument& err) {
        throw ParseError(std::string("sequential table: ") + err.what());
    }
}

Json sequential_table_to_json(const order::SequentialTable& table) {
    auto block = [](const order::OrderBlock& b) {
        return Json{{"yy", b.yy}, {"yn", b.yn}, {"ny", b.ny}, {"nn", b.nn}};
    };
    Json j;
    j["questions"] = {table.first_question(), table.second_question()};
    j["order_" + table.first_question() + table.second_question()] = block(table.order_ab());
    j["order_" + table.second_question() + table.first_question()] = block(table.order_ba());
    j["provenance"] =
        table.provenance() == order::Provenance::Empirical ? "empirical" : "model";
    return j;
}

std::vector<fock::MembershipRecord> parse_membership_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("membership csv: empty input");
    }
    // tolerate trailing \r from windows-style files
    auto strip = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
        return s;
    };
    if (strip(line) != "item,mu_a,mu_b,mu_comb,combination") {
        throw ParseError("membership csv: header must be 'item,mu_a,mu_b,mu_comb,combination'");
    }
    std::vector<fock::MembershipRecord> records;
    int line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        line = strip(line);
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream fieldstream(line);
        std::string field;
        while (std::getline(fieldstream, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 5) {
            throw ParseError("membership csv line " + std::to_string(line_number) +
                             ": expected 5 fields, got " + std::to_string(fields.size()));
        }
        fock::Combination combination;
        if (fields[4] == "conjunction") {
            combination = fock::Combination::Conjunction;
        } else if (fields[4] == "disjunction") {
            combination = fock::Combination::Disjunction;
        } else {
            throw ParseError("membership csv line " + std::to_string(line_number) +
                             ": combination must be 'conjunction' or 'disjunction'");
        }
        try {
            records.emplace_back(fields[0], std::stod(fields[1]), std::stod(fields[2]),
                                 std::stod(fields[3]), combination);
        } catch (const InvalidArgument& err) {
            throw ParseError("membership csv line " + std::to_string(line_number) + ": " +
                             err.what());
        } catch (const std::exception&) {
            throw ParseError("membership csv line " + std::to_string(line_number) +
                             ": malformed numeric field");
        }
    }
    if (records.empty()) {
        throw ParseError("membership csv: no records");
    }
    return records;
}

fock::JointCorrelationSet parse_correlations(const Json& j) {
    auto table = [&](const char* key) {
        if (!j.contains(key)) {
            throw ParseError(std::string("correlations: missing table '") + key + "'");
        }
        const std::string where = std::string("correlations table ") + key;
        return fock::JointOutcomeTable{
            get_probability(j[key], "pp", where), get_probability(j[key], "pm", where),
            get_probability(j[key], "mp", where), get_probability(j[key], "mm", where)};
    };
    try {
        return fock::JointCorrelationSet::from_tables(table("11"), table("12"), table("21"),
                                                      table("22"));
    } catch (const InvalidArgument& err) {
        throw ParseError(std::string("correlations: ") + err.what());
    }
}

OccupationCounts parse_occupation_counts(const Json& j) {
    if (!j.contains("N") || !j.contains("M")) {
        throw ParseError("occupation counts: need integer fields 'N' and 'M'");
    }
    OccupationCounts result;
    result.n = j["N"].get<int>();
    result.m = j["M"].get<int>();
    if (result.n < 1 || result.m < 2) {
        throw ParseError("occupation counts: need N >= 1 and M >= 2");
    }
    if (j.contains("counts")) {
        for (const auto& c : j["counts"]) {
            result.counts.push_back(c.get<std::uint64_t>());
        }
    }
    return result;
}

namespace {

bloch::RhoMembrane parse_membrane(const Json& j, const std::string& where) {
    if (!j.contains("type")) {
        throw ParseError(where + ": membrane needs a 'type'");
    }
    const std::string type = j["type"].get<std::string>();
    if (type == "uniform") {
        return bloch::UniformMembrane{};
    }
    if (type == "interval") {
        try {
            return bloch::IntervalMembrane(j.at("a").get<double>(), j.at("b").get<double>());
        } catch (const InvalidArgument& err) {
            throw ParseError(where + ": " + err.what());
        } catch (const Json::exception&) {
            throw ParseError(where + ": interval membrane needs numeric 'a' and 'b'");
        }
    }
    if (type == "piecewise") {
        try {
            return bloch::PiecewiseConstantMembrane(
                j.at("breaks").get<std::vector<double>>(),
                j.at("weights").get<std::vector<double>>());
        } catch (const InvalidArgument& err) {
            throw ParseError(where + ": " + err.what());
        } catch (const Json::exception&) {
            throw ParseError(where + ": piecewise membrane needs 'breaks' and 'weights' arrays");
        }
    }
    throw ParseError(where + ": unknown membrane type '" + type + "'");
}

Json membrane_to_json(const bloch::RhoMembrane& membrane) {
    return std::visit(
        [](const auto& m) -> Json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, bloch::UniformMembrane>) {
                return Json{{"type", "uniform"}};
            } else if constexpr (std::is_same_v<T, bloch::IntervalMembrane>) {
                return Json{{"type", "interval"}, {"a", m.a}, {"b", m.b}};
            } else {
                return Json{{"type", "piecewise"}, {"breaks", m.breaks}, {"weights", m.weights}};
            }
        },
        membrane);
}

}  // namespace

bloch::MembraneTwoQuestionModel parse_membrane_model(const Json& j) {
    for (const char* key : {"e_c", "e_g", "gamma"}) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw ParseError(std::string("membrane model: missing numeric field '") + key + "'");
        }
    }
    try {
        return bloch::MembraneTwoQuestionModel(
            j["e_c"].get<double>(), j["e_g"].get<double>(), j["gamma"].get<double>(),
            parse_membrane(j.at("membrane_c"), "membrane_c"),
            parse_membrane(j.at("membrane_g"), "membrane_g"));
    } catch (const InconsistentGeometry& err) {
        throw ParseError(std::string("membrane model: ") + err.what());
    } catch (const Json::exception&) {
        throw ParseError("membrane model: needs 'membrane_c' and 'membrane_g'");
    }
}

Json membrane_model_to_json(const bloch::MembraneTwoQuestionModel& model) {
    Json j;
    j["e_c"] = model.e_c;
    j["e_g"] = model.e_g;
    j["gamma"] = model.gamma;
    j["membrane_c"] = membrane_to_json(model.membrane_c);
    j["membrane_g"] = membrane_to_json(model.membrane_g);
    return j;
}

bloch::MembraneTwoQuestionModel load_membrane_model(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::exception& err) {
        throw ParseError(path + ": invalid JSON: " + err.what());
    }
    return parse_membrane_model(j);
}

Dataset load_dataset(const std::string& path, DatasetKind kind) {
    const std::string text = read_file(path);
    auto parse_json = [&]() {
        try {
            return Json::parse(text);
        } catch (const Json::exception& err) {
            throw ParseError(path + ": invalid JSON: " + err.what());
        }
    };
    switch (kind) {
        case DatasetKind::Sequential:
            return {kind, path, parse_sequential_table(parse_json())};
        case DatasetKind::Membership:
            return {kind, path, parse_membership_csv(text)};
        case DatasetKind::Correlations:
            return {kind, path, parse_correlations(parse_json())};
        case DatasetKind::OccupationCounts:
            return {kind, path, parse_occupation_counts(parse_json())};
    }
    throw InvalidArgument("load_dataset: unknown kind");
}

Json Report::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    j["results"] = results;
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    return j;
}

Report make_report(const std::string& command, const std::string& inputs_digest, Json results,
                   std::uint64_t seed) {
    return {command, inputs_digest, std::move(results), seed, kToolVersion};
}

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

std::string digest_file(const std::string& path) { return digest_bytes(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write file: " + path);
    }
    out << content;
}

}  // namespace qcog::io
