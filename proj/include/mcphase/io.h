// Copyright 2026 The mcphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MCPHASE_IO_H
#define MCPHASE_IO_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mcphase/appendix.h"
#include "mcphase/classifier.h"
#include "mcphase/coincidence.h"
#include "mcphase/estimator.h"
#include "mcphase/graph.h"
#include "mcphase/sampler.h"
#include "mcphase/sparse_design.h"

namespace mcp {

using Json = nlohmann::ordered_json;

inline constexpr const char *kToolVersion = "0.1.0";

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);
/// Parses a JSON file; malformed content is a ValidationError.
Json read_json_file(const std::string &path);
/// Two-space indented, trailing newline.
std::string dump_json(const Json &j);

/// {"<size_key>": n, "entries": row-major [[re, im], ...]}.
Json matrix_to_json(const ComplexMatrix &m, const char *size_key);
ComplexMatrix matrix_from_json(const Json &j, const char *size_key);

Json unitary_to_json(const ScatteringMatrix &u);
/// Certifies unitarity at 1e-10.
ScatteringMatrix unitary_from_json(const Json &j);
Json gram_to_json(const GramMatrix &g);
/// Runs validate_gram; the error names the violated invariant.
GramMatrix gram_from_json(const Json &j);

/// Header "config,rate,im_residual"; config is quoted, numbers in %.17g.
std::string rates_to_csv(const CoincidenceReport &report);
/// Inverse of rates_to_csv. modes is the largest port seen and discard_mass
/// is 1 minus the total rate.
CoincidenceReport rates_from_csv(const std::string &text);

Json counts_to_json(const CountReport &c);
CountReport counts_from_json(const Json &j);

/// {"n", "modes", "v", "sigma", "rho", "cycle", "o_sets", "beamsplitters"};
/// sigma and rho are image lists, o_sets maps "a-b" to its ports.
Json design_to_json(const SparseDesign &d);
struct DesignFile {
    InputConfig input;
    CycleLayout layout;
};
DesignFile design_from_json(const Json &j);

/// Configurations are sorted port arrays; chi is keyed by "a-b".
Json classification_to_json(const ConfigClassification &c);
/// Reads the sets back, checking them against classify(layout).
ConfigClassification classification_from_json(const Json &j, const CycleLayout &layout);

Json estimate_to_json(const EstimateReport &e);
Json sweep_to_json(const ConjectureSweepResult &r);
Json graph_to_json(const ConnectivityGraph &g);
Json graph_to_json(const EDGraph &g);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string &bytes);

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
    std::optional<uint64_t> seed;
    Json parameters = Json::object();
    std::string version = kToolVersion;
    std::string timestamp;  // UTC, ISO 8601
};

Json manifest_to_json(const RunManifest &m);
std::string utc_timestamp();

}  // namespace mcp

#endif
