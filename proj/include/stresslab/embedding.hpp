/**
 * Exact rational vertex coordinates and the constructions built on them:
 * the parameter system (coordinates plus the all-ones row), genericity
 * certificates, the polytopality test, iterated vertex figures and the
 * affine normal form.
 */
#pragma once

#include "stresslab/complex.hpp"
#include "stresslab/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace stresslab {

class EmbeddingError : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

struct Embedding {
    int dim = 0;
    std::map<std::string, RowVector> coords;

    const RowVector& at(const std::string& label) const;
    /** Coordinates in the complex's vertex order; throws when one is missing. */
    linalg::DenseMatrix for_complex(const SimplicialComplex& c) const;
    /** Keeps exactly the vertices of c. */
    Embedding restricted_to(const SimplicialComplex& c) const;

    friend bool operator==(const Embedding& a, const Embedding& b) {
        return a.dim == b.dim && a.coords == b.coords;
    }
};

/** Rows are the d coordinate functionals followed by the all-ones row. */
struct ThetaSystem {
    int dim = 0;
    linalg::DenseMatrix rows;  // (dim + 1) x n, columns in complex vertex order
};

struct GenericityCertificate {
    bool facet_independent = false;
    bool adjacent_pairs_affinely_independent = false;
    std::uint64_t seed = 0;
    int resample_count = 0;

    bool passes() const { return facet_independent && adjacent_pairs_affinely_independent; }
};

struct GenericEmbedding {
    Embedding embedding;
    GenericityCertificate certificate;
};

/** Exact coordinates from text; errors on a missing vertex or bad rational. */
Embedding natural(const SimplicialComplex& c, const std::map<std::string, std::vector<std::string>>& table);
Embedding natural(const SimplicialComplex& c, const std::map<std::string, RowVector>& table);

/** Deterministic integer in [-bound, bound], independent of the stdlib's distributions. */
Integer uniform_integer(std::mt19937_64& rng, std::uint64_t bound);

/**
 * Uniform integer coordinates in [-bound, bound]^d, resampled (at most 16
 * times) until the certificate passes.
 */
GenericEmbedding generic_random(const SimplicialComplex& c, int d, std::uint64_t seed,
                                std::uint64_t bound = 1'000'000);

/** Raw draw for an explicit label list; no certificate. */
Embedding random_integer_embedding(const std::vector<std::string>& labels, int d, std::mt19937_64& rng,
                                   std::uint64_t bound);

GenericityCertificate certify(const SimplicialComplex& c, const Embedding& p);

/** Rank of the points, viewed as vectors. */
std::size_t linear_rank(const linalg::DenseMatrix& points);
/** Affine rank + 1 of the points (the size of a largest independent subset). */
std::size_t affine_rank(const linalg::DenseMatrix& points);

ThetaSystem theta(const SimplicialComplex& c, const Embedding& p);

/** Normal a and offset b with a.x = b on the points; nullopt when degenerate. */
std::optional<std::pair<RowVector, Rational>> hyperplane_through(const linalg::DenseMatrix& points, int dim);

struct PolytopalCheck {
    bool ok = false;
    // First violation: the facet and the vertex off its supporting side.
    std::optional<std::pair<Face, VertexId>> witness;
};

/**
 * Every facet spans a hyperplane with all remaining vertices strictly on one
 * side.  @throws EmbeddingError on a degenerate facet hyperplane.
 */
PolytopalCheck check_polytopal(const SimplicialComplex& c, const Embedding& p);

/** One vertex-figure step, in the form the cone lemma consumes. */
struct VertexFigureStep {
    std::string apex;
    RowVector normal;                      // separating functional a, a.(p(u) - p(apex)) >= 1
    std::size_t dropped = 0;               // coordinate removed when identifying the hyperplane
    std::map<std::string, Rational> scale;  // a.(p(u) - p(apex)) for link vertices
};

struct QuotientEmbedding {
    SimplicialComplex link;
    Embedding embedding;
    std::vector<VertexFigureStep> steps;
};

/** Iterated vertex figures at the vertices of f; needs a polytopal input. */
QuotientEmbedding quotient_embedding(const SimplicialComplex& c, const Embedding& p, const Face& f);

/**
 * Coordinates of a star in cone-lemma form: apex at 0, every other vertex u
 * at (scale_u * q(u), scale_u) where q is the quotient.
 */
Embedding cone_form(const Embedding& p, const VertexFigureStep& step, const SimplicialComplex& star_complex);

/** v -> A p(v) + b.  @throws EmbeddingError when A is singular. */
Embedding affine_transform(const Embedding& p, const linalg::DenseMatrix& a, const RowVector& b);

/**
 * Sends the lexicographically first affinely independent d+1 vertices to
 * 0, e_1, ..., e_d.  @throws EmbeddingError when p does not affinely span.
 */
Embedding canonical(const Embedding& p);

}  // namespace stresslab
