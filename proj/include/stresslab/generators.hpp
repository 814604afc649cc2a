/**
 * Instance constructors: polytope boundaries with exact coordinates,
 * bistellar flips and seeded random walks on PL spheres, and the
 * Murai–Nevo ball T(Δ) of a stacked sphere.
 */
#pragma once

#include "stresslab/complex.hpp"
#include "stresslab/embedding.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stresslab {

/** A j-flip with j = |A|: Ā*∂B̄ is replaced by ∂Ā*B̄. */
struct FlipStep {
    LabelFace a;
    LabelFace b;
    int j = 0;

    friend bool operator==(const FlipStep&, const FlipStep&) = default;
};

struct FlipTrace {
    SimplicialComplex start;
    std::vector<FlipStep> steps;
    std::uint64_t seed = 0;
};

class FlipError : public StressLabError {
  public:
    FlipError(const std::string& what, std::optional<FlipTrace> partial = std::nullopt)
        : StressLabError(what), partial_(std::move(partial)) {}
    const std::optional<FlipTrace>& partial_trace() const { return partial_; }

  private:
    std::optional<FlipTrace> partial_;
};

enum class EmbeddingKind { none, natural, generic };

struct Provenance {
    std::string constructor;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::optional<std::uint64_t> seed;
};

struct Instance {
    std::string name;
    SimplicialComplex complex;
    std::optional<Embedding> embedding;
    EmbeddingKind embedding_kind = EmbeddingKind::none;
    std::optional<GenericityCertificate> certificate;  // for generic embeddings
    std::optional<std::uint64_t> embedding_seed;
    std::uint64_t embedding_bound = 0;
    Provenance provenance;
    std::optional<FlipTrace> trace;

    int d() const { return complex.dim() + 1; }
    const Embedding& coords() const;
};

/** Label with a zero-padded index wide enough for `count` items. */
std::string indexed_label(const std::string& prefix, std::size_t index, std::size_t count);

Instance simplex_boundary(int d);
Instance cross_polytope(int d);
Instance cyclic_polytope(int d, int n);
Instance stacked_sphere(int d, int n);
Instance stacked_join(int d, int k);
Instance polygon_join(const std::vector<int>& sizes);
/**
 * Join of polytope boundaries realized as a free sum: each part is centered
 * at its vertex centroid in its own coordinate block.  Labels of part r get
 * the prefix "j<r>_".  Parts are instance expressions without "@generic".
 */
Instance free_join(const std::vector<std::string>& part_expressions);

/** @throws FlipError naming the failed precondition. */
SimplicialComplex bistellar_flip(const SimplicialComplex& c, const LabelFace& a, const LabelFace& b);

struct FlipMove {
    LabelFace a;
    LabelFace b;
};

/** All legal flips; `fresh` names the vertex a facet subdivision would add. */
std::vector<FlipMove> legal_flips(const SimplicialComplex& c, const std::string& fresh);

SimplicialComplex replay(const FlipTrace& trace);

struct FlipConstraints {
    bool keep_flag = false;
    std::optional<int> forbid_missing_dim_from;  // no missing face of dimension >= this

    bool admits(const SimplicialComplex& c) const;
};

/**
 * Seeded walk of `steps` uniformly chosen legal flips starting at the
 * boundary of the d-simplex; the result carries a generic embedding.
 * @throws FlipError with the partial trace when no admissible flip exists.
 */
Instance random_pl_sphere(int d, int steps, std::uint64_t seed, const FlipConstraints& constraints = {});

/** Same walk from an arbitrary starting sphere; fresh_label(t) names the t-th new vertex. */
FlipTrace random_flip_walk(const SimplicialComplex& start, int steps, std::uint64_t seed,
                           const FlipConstraints& constraints,
                           const std::function<std::string(std::size_t)>& fresh_label);

/** T(Δ) = {F : every subset of F with at most d-k vertices is a face}. */
SimplicialComplex murai_nevo_ball(const SimplicialComplex& c, int k);

/** Replaces the embedding by a certified generic one. */
Instance with_generic_embedding(Instance inst, std::uint64_t seed, std::uint64_t bound = 1'000'000);

/** Builds an instance from a constructor name and its parameters. */
Instance make_instance(const std::string& constructor, const nlohmann::ordered_json& params);

/**
 * Parses a short instance expression such as "Oct_4", "SB_3", "C_5",
 * "cyclic(4,7)", "stacked_sphere(4,8)", "stacked_join(6,2)",
 * "polygon_join(5,5)", "random_pl_sphere(5,15,3)" or "join(C_6,SB_3)".
 */
Instance instance_from_expression(const std::string& expr);

/** True when the complex is reproduced by its provenance or flip trace. */
bool provenance_replays(const Instance& inst);

/** Constructor names whose output is the boundary of a convex polytope. */
bool is_polytope_constructor(const std::string& constructor);

}  // namespace stresslab
