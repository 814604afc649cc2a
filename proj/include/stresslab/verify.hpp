// Theorem checks and conjecture probes over instances.
//
// Every check certifies its hypotheses first; an unmet hypothesis yields
// hypothesis_unmet and never fail.  Probes report probe_holds / probe_fails
// and are never treated as defects.
#pragma once

#include "stresslab/generators.hpp"
#include "stresslab/stress.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stresslab {

enum class Conclusion { pass, fail, hypothesis_unmet, probe_holds, probe_fails };

const char* conclusion_name(Conclusion c);
Conclusion parse_conclusion(const std::string& s);

struct HypothesisCheck {
    std::string name;
    bool holds = false;

    friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

struct VerificationReport {
    std::string check_id;
    nlohmann::ordered_json instance = nlohmann::ordered_json::object();
    std::vector<HypothesisCheck> hypotheses;
    Conclusion conclusion = Conclusion::hypothesis_unmet;
    nlohmann::ordered_json dims = nlohmann::ordered_json::object();
    nlohmann::ordered_json witness;  // null when absent
    std::optional<double> elapsed_ms;

    bool is_probe() const;
    // First failing hypothesis, if any.
    std::optional<std::string> unmet() const;
};

class UnknownCheck : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

struct CheckParams {
    std::optional<int> i, j, k;
    std::optional<LabelFace> tau, missing, face;
    std::optional<std::uint64_t> seed;
};

// Provenance summary stored in every report.
nlohmann::ordered_json instance_summary(const Instance& inst);

// Hypothesis predicates shared by the checks.
bool is_polytopal(const Instance& inst);
bool is_generic_proxy(const Instance& inst);
bool is_pl_certified(const Instance& inst);
bool is_facet_independent(const Instance& inst);

VerificationReport verify_lefschetz(const Instance& inst, int i);
VerificationReport verify_pou_affine1(const Instance& inst);
// Theorem parts 1 (star sums over k-faces) and 2 (derivative spans down to j).
VerificationReport verify_pou_linear(const Instance& inst, int i, int k, std::optional<int> j = std::nullopt);
VerificationReport verify_pou_affine_higher(const Instance& inst, int i);
VerificationReport verify_antistar(const Instance& inst, const LabelFace& tau, int i);
VerificationReport verify_star_surjection(const Instance& inst, int i, const LabelFace& tau);
VerificationReport verify_reconstruction(const Instance& inst, int i, int j);
VerificationReport verify_support(const Instance& inst, int i);
VerificationReport verify_flag_g_bound(const Instance& inst);

struct SignStressResult {
    std::optional<StressPoly> stress;
    VerificationReport report;
};

SignStressResult positive_stress_on_missing_face(const Instance& inst, const LabelFace& missing,
                                                 const LabelFace& face, int i);

VerificationReport verify_kstacked(const Instance& inst, int k, int i);

// One flip Δ -> Δ' under a single embedding of V(Δ) ∪ V(Δ'), checked at
// degrees 1..max_degree against the rank changes of the flip trichotomy.
VerificationReport verify_flip_bookkeeping(const SimplicialComplex& before, const SimplicialComplex& after,
                                           const FlipStep& step, const Embedding& p, int max_degree);
// All steps of a trace, each under a shared certified generic embedding.
std::vector<VerificationReport> verify_trace_bookkeeping(const FlipTrace& trace, int max_degree, std::uint64_t seed);

// 1-skeleton rigidity in the embedding dimension.
VerificationReport verify_rigidity(const Instance& inst);

// ids: conj-1.1, conj-1.2, conj-1.3, conj-3.3, conj-3.7, conj-4.4
VerificationReport probe_conjecture(const std::string& id, const Instance& inst, const CheckParams& params);

// Dispatch by check id (verify verbs) or conjecture id (probe verbs).
// @throws UnknownCheck for an unknown id, StressLabError for missing parameters.
VerificationReport run_check(const std::string& id, const Instance& inst, const CheckParams& params);
const std::vector<std::string>& check_ids();
const std::vector<std::string>& probe_ids();

}  // namespace stresslab
