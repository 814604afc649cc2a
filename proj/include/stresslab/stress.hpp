/**
 * Stress polynomials and stress spaces.
 *
 * A degree-k polynomial is stored by its coefficients on the monomials of
 * degree k whose support is a face.  Spaces are kept in reduced row echelon
 * form over that basis, so two spaces are equal iff their bases are equal
 * entry by entry.
 */
#pragma once

#include "stresslab/complex.hpp"
#include "stresslab/embedding.hpp"
#include "stresslab/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stresslab {

/** Nondecreasing vertex indices; x_a^2 x_b is {a, a, b}. */
using Monomial = std::vector<VertexId>;
using LabelMonomial = std::vector<std::pair<std::string, int>>;  // (vertex, exponent)

class StressError : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

class MonomialBasis {
  public:
    /** Monomials of degree k supported on faces of c, in lex order. */
    static std::shared_ptr<const MonomialBasis> of(const SimplicialComplex& c, int degree);
    /** Explicit list; sorted and deduplicated on the way in. */
    static std::shared_ptr<const MonomialBasis> from_list(std::vector<std::string> labels, int degree,
                                                          std::vector<Monomial> monomials);

    const std::vector<std::string>& labels() const { return labels_; }
    int degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<Monomial>& monomials() const { return monomials_; }

    std::optional<std::size_t> index_of(const Monomial& m) const;
    /** Support of monomial i. */
    Face support(std::size_t i) const;
    bool is_squarefree(std::size_t i) const;
    LabelMonomial labelled(std::size_t i) const;
    std::string text(std::size_t i) const;

    /** Degree (k - r) monomials dividing some monomial here. */
    std::shared_ptr<const MonomialBasis> divisors(int r) const;

    friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) {
        return a.degree_ == b.degree_ && a.labels_ == b.labels_ && a.monomials_ == b.monomials_;
    }

  private:
    std::vector<std::string> labels_;
    int degree_ = 0;
    std::vector<Monomial> monomials_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

struct StressPoly {
    BasisPtr basis;
    RowVector coeffs;

    int degree() const { return basis->degree(); }
};

/** Row space over a monomial basis, always in RREF. */
struct Subspace {
    BasisPtr basis;
    linalg::DenseMatrix rows;

    std::size_t dim() const { return rows.size(); }
    StressPoly vector(std::size_t i) const { return {basis, rows[i]}; }
};

enum class StressKind { linear, affine };

const char* kind_name(StressKind k);
StressKind parse_kind(const std::string& name);

struct StressSpace {
    StressKind kind = StressKind::affine;
    int degree = 0;
    Subspace space;
    std::string complex_name;
    std::string embedding_name;

    std::size_t dim() const { return space.dim(); }
};

BasisPtr monomial_basis(const SimplicialComplex& c, int k);

/** ∂_μ λ, where μ is a monomial over the same vertex labels. */
StressPoly derivative(const StressPoly& lambda, const Monomial& mu);
/** Σ_v ℓ_v ∂/∂x_v λ; ℓ is indexed like the basis labels. */
StressPoly derivative_by_form(const StressPoly& lambda, const RowVector& form);

/** Rows (form, ν) of the map λ -> (∂_{θ_i} λ)_i, columns = degree-k basis. */
linalg::SparseMatrix stress_equations(const MonomialBasis& basis_k, const MonomialBasis& basis_km1,
                                      const linalg::DenseMatrix& forms);

/** Linear: killed by ∂ along the coordinate rows; affine: also by ∂_1. */
StressSpace stress_space(const SimplicialComplex& c, const Embedding& p, int k, StressKind kind);

bool is_stress(const StressPoly& lambda, const SimplicialComplex& c, const Embedding& p, StressKind kind);

enum class DerivativeMode { all_monomials, face_monomials };

/** span{∂_μ ω : ω in S, μ squarefree of degree r} at degree k - r. */
Subspace derivative_span(const Subspace& s, int r, DerivativeMode mode);
/** Same span with μ ranging over squarefree monomials in `vertices` only. */
Subspace derivative_span_over(const Subspace& s, int r, const std::vector<VertexId>& vertices);

/** Same space over a larger basis.  @throws StressError when a used monomial is absent. */
Subspace reembed(const Subspace& s, const BasisPtr& target);

Subspace span(BasisPtr basis, const linalg::DenseMatrix& generators);
Subspace zero_space(BasisPtr basis);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace sum(const std::vector<Subspace>& parts, const BasisPtr& ambient);
Subspace intersect(const Subspace& a, const Subspace& b);
/** a ⊇ b after aligning bases. */
bool contains(const Subspace& a, const Subspace& b);
bool equals(const Subspace& a, const Subspace& b);
bool contains_vector(const Subspace& a, const StressPoly& v);

/** Coefficients on squarefree monomials, i.e. weights on (k-1)-faces. */
std::vector<std::pair<LabelFace, Rational>> squarefree_part(const StressPoly& lambda);
std::vector<std::pair<LabelFace, int>> sign_vector(const StressPoly& lambda);
/** Faces F with |F| = k such that some element of S has a nonzero x_F coefficient. */
std::vector<LabelFace> support_faces(const Subspace& s);

/**
 * Lifts an affine k-stress on (Δ, p') to the cone v*Δ embedded with p(v) = 0
 * and p(u) = (a_u p'(u), a_u); the lift has weight ω'_F / Π_{u∈F} a_u on every
 * apex-free squarefree monomial x_F.
 * @throws StressError when p is not of that form or the system is inconsistent.
 */
StressPoly cone_lift(const StressPoly& omega, const Embedding& base_embedding, const SimplicialComplex& cone_complex,
                     const std::string& apex, const Embedding& cone_embedding);

/**
 * An embedding whose affine dependence space is the given affine 1-stress
 * space, in the affine normal form.
 * @throws StressError when the space is not a space of affine dependencies.
 */
Embedding recover_affine_type(const Subspace& s1);

}  // namespace stresslab
