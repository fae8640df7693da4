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

#ifndef QCOG_IO_HPP
#define QCOG_IO_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qcog/bloch.hpp"
#include "qcog/fock.hpp"
#include "qcog/order_effects.hpp"

namespace qcog::io {

using Json = nlohmann::ordered_json;

enum class DatasetKind { Sequential, Membership, Correlations, OccupationCounts };

struct OccupationCounts {
    int n = 0;
    int m = 0;
    std::vector<std::uint64_t> counts;  // aligned with the enumeration order; may be empty
};

struct Dataset {
    DatasetKind kind;
    std::string source_path;
    std::variant<order::SequentialTable, std::vector<fock::MembershipRecord>,
                 fock::JointCorrelationSet, OccupationCounts>
        payload;
};

/// Parses and validates a dataset file of the declared kind. Schema errors
/// carry the record index / field in the message.
Dataset load_dataset(const std::string& path, DatasetKind kind);

order::SequentialTable parse_sequential_table(const Json& j);
Json sequential_table_to_json(const order::SequentialTable& table);

std::vector<fock::MembershipRecord> parse_membership_csv(const std::string& text);

fock::JointCorrelationSet parse_correlations(const Json& j);

OccupationCounts parse_occupation_counts(const Json& j);

bloch::MembraneTwoQuestionModel parse_membrane_model(const Json& j);
Json membrane_model_to_json(const bloch::MembraneTwoQuestionModel& model);
bloch::MembraneTwoQuestionModel load_membrane_model(const std::string& path);

/// Reproducible result envelope; identical inputs and seed yield a
/// byte-identical `results` section.
struct Report {
    std::string command;
    std::string inputs_digest;
    Json results;
    std::uint64_t seed = 0;
    std::string tool_version;

    Json to_json() const;
};

Report make_report(const std::string& command, const std::string& inputs_digest, Json results,
                   std::uint64_t seed);

/// FNV-1a 64-bit content hash, rendered as fnv1a64:<hex>.
std::string digest_bytes(const std::string& bytes);
std::string digest_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qcog::io

#endif  // QCOG_IO_HPP
