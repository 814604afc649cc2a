// JSON file formats: scx/1, emb/1, inst/1, stress/1, vr/1.
//
// Serialization is canonical (sorted vertices, lexicographic facets, RREF
// bases, normalized rationals), so equal objects serialize byte-identically.
#pragma once

#include "stresslab/generators.hpp"
#include "stresslab/stress.hpp"
#include "stresslab/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace stresslab::io {

using json = nlohmann::ordered_json;

class IoError : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

class FormatError : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

json complex_to_json(const SimplicialComplex& c, const std::string& name);
SimplicialComplex complex_from_json(const json& j);

json embedding_to_json(const Embedding& p);
Embedding embedding_from_json(const json& j);

json trace_to_json(const FlipTrace& t);
FlipTrace trace_from_json(const json& j);

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

json stress_to_json(const StressSpace& s);
StressSpace stress_from_json(const json& j);
// A single polynomial as the stress/1 payload of its span.
json poly_to_json(const StressPoly& p, StressKind kind, const std::string& complex_name);

json report_to_json(const VerificationReport& r, bool with_timing);
VerificationReport report_from_json(const json& j);

// Reads a JSON document.  @throws IoError when unreadable, FormatError when malformed.
json read_json(const std::filesystem::path& path);
// Writes via a temporary file and rename, so readers never see partial output.
void write_json_atomic(const std::filesystem::path& path, const json& j);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

// Instances come from an inst/1 or scx/1 file, or from an expression.
Instance load_instance(const std::string& spec);

}  // namespace stresslab::io
