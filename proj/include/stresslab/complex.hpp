/**
 * Finite abstract simplicial complexes over string-labelled vertices.
 *
 * Vertices are stored once, sorted lexicographically by label, and faces are
 * strictly increasing lists of indices into that table (so index order is
 * label order).  The full face poset is enumerated at construction, which
 * keeps every const member safe to call from several threads.
 */
#pragma once

#include "stresslab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stresslab {

using VertexId = std::uint32_t;
using Face = std::vector<VertexId>;
using LabelFace = std::vector<std::string>;

class ComplexError : public StressLabError {
  public:
    using StressLabError::StressLabError;
};

class SimplicialComplex {
  public:
    /** The complex {∅}: no vertices, dimension -1. */
    SimplicialComplex();

    /**
     * Facets are label lists; inclusion-maximal ones are kept, duplicates
     * dropped.  When `declared` is given every facet label must be declared
     * and every declared label must occur.
     * @throws ComplexError on an empty facet list or a label mismatch.
     */
    static SimplicialComplex from_facets(const std::vector<LabelFace>& facets,
                                         const std::optional<std::vector<std::string>>& declared = std::nullopt);

    /**
     * Facets given as index lists into `labels` (sorted, unique).  Labels
     * that no facet uses are dropped and indices remapped.
     */
    static SimplicialComplex from_indexed(const std::vector<std::string>& labels, std::vector<Face> facets);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t num_vertices() const { return labels_.size(); }
    int dim() const { return static_cast<int>(by_dim_.size()) - 2; }
    const std::vector<Face>& facets() const { return facets_; }
    bool is_pure() const;

    /** Faces of dimension k for -1 <= k <= dim(), sorted. */
    const std::vector<Face>& faces_of_dim(int k) const;
    std::size_t num_faces() const;
    /** All faces, by increasing dimension. */
    std::vector<Face> all_faces() const;

    bool contains(const Face& f) const;
    bool contains_labels(const LabelFace& f) const;

    std::optional<VertexId> index_of(const std::string& label) const;
    /** @throws ComplexError on an unknown label. */
    Face face_of(const LabelFace& labels) const;
    LabelFace labels_of(const Face& f) const;
    const std::string& label(VertexId v) const { return labels_[v]; }

    std::vector<LabelFace> facet_labels() const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.labels_ == b.labels_ && a.facets_ == b.facets_;
    }

  private:
    void build(std::vector<std::string> labels, std::vector<Face> facets);

    std::vector<std::string> labels_;
    std::vector<Face> facets_;
    std::vector<std::vector<Face>> by_dim_;  // index k + 1
};

/** Translates a face into another complex's indexing. */
Face translate(const Face& f, const SimplicialComplex& from, const SimplicialComplex& to);

/** Complex generated by label facets; convenience over from_facets. */
SimplicialComplex complex_of(const std::vector<LabelFace>& facets);

/** Simplex closure on the given labels. */
SimplicialComplex simplex(const LabelFace& vertices);
/** Boundary of the simplex on the given labels (at least one label). */
SimplicialComplex simplex_boundary_on(const LabelFace& vertices);

SimplicialComplex star(const SimplicialComplex& c, const Face& f);
SimplicialComplex link(const SimplicialComplex& c, const Face& f);
/** Faces not containing f.  @throws ComplexError when nothing remains. */
SimplicialComplex antistar(const SimplicialComplex& c, const Face& f);
/** Subcomplex induced on a vertex subset. */
SimplicialComplex induced(const SimplicialComplex& c, const Face& vertices);
SimplicialComplex skeleton(const SimplicialComplex& c, int k);
/** @throws ComplexError when the label sets intersect. */
SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex cone(const SimplicialComplex& c, const std::string& apex);

/** Subsets of V not in c all of whose proper subsets are, by size then lex. */
std::vector<Face> missing_faces(const SimplicialComplex& c);
bool is_flag(const SimplicialComplex& c);
/** Largest dimension of a missing face, nullopt when there is none. */
std::optional<int> max_missing_dim(const SimplicialComplex& c);

enum class Pseudomanifold { none, with_boundary, without_boundary };

struct StructureReport {
    bool pure = false;
    Pseudomanifold pseudomanifold = Pseudomanifold::none;
    bool normal = false;
    bool strongly_connected = false;
    std::optional<SimplicialComplex> boundary;  // set only with boundary
};

StructureReport classify(const SimplicialComplex& c);
bool is_connected(const SimplicialComplex& c);
bool is_strongly_connected(const SimplicialComplex& c);

/**
 * Faces outside the boundary whose proper faces all lie on it.
 * @throws ComplexError when c is not a pseudomanifold with boundary.
 */
std::vector<Face> minimal_interior_faces(const SimplicialComplex& c);

struct FHGVectors {
    int d = 0;
    std::vector<long> f;  // f_0 .. f_{d-1}
    std::vector<long> h;  // h_0 .. h_d
    std::vector<long> g;  // g_0 .. g_{ceil(d/2)}
};

/** @throws ComplexError unless dim c == d - 1. */
FHGVectors fhg(const SimplicialComplex& c, int d);

/** h_j - h_{j-1} for any j, with h outside [0, d] read as 0. */
long g_at(const FHGVectors& v, int j);

bool is_subset(const Face& a, const Face& b);
Face face_union(const Face& a, const Face& b);
Face face_minus(const Face& a, const Face& b);

}  // namespace stresslab
