// Brute-force reference implementations for the tests.
//
// Nothing here calls the library's linear algebra, face enumeration or stress
// code; complexes are read only through their labels and facets.  Vertex sets
// are bitmasks over the complex's vertex order, so inputs stay small (n <= 20).
#pragma once

#include "stresslab/complex.hpp"
#include "stresslab/embedding.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using stresslab::Embedding;
using stresslab::Integer;
using stresslab::Rational;
using stresslab::SimplicialComplex;
using Mask = std::uint32_t;
using Matrix = std::vector<std::vector<Rational>>;

int popcount(Mask m);
Mask mask_of(const stresslab::Face& f);
std::vector<Mask> facet_masks(const SimplicialComplex& c);

// Every face, the empty face included.
std::set<Mask> faces(const SimplicialComplex& c);
std::vector<long> f_vector(const SimplicialComplex& c);
std::set<Mask> missing_faces(const SimplicialComplex& c);
// Requires a pseudomanifold with boundary.
std::set<Mask> minimal_interior_faces(const SimplicialComplex& c);

// Fraction-free Gaussian elimination on integer-scaled rows.
std::size_t rank(const Matrix& m);
int determinant_sign(const Matrix& m);
std::size_t rank_mod2(std::vector<std::vector<int>> m);

// Reduced Betti numbers b_0 .. b_dim from boundary-matrix ranks.
std::vector<long> reduced_betti(const SimplicialComplex& c, bool mod2);

// dim of the degree-k stress space, built from monomial exponent vectors.
std::size_t stress_dim(const SimplicialComplex& c, const Embedding& p, int k, bool affine);
// f_1 - rank of the rigidity matrix of the 1-skeleton.
std::size_t self_stress_dim(const SimplicialComplex& c, const Embedding& p);

// Facets of the hull of a simplicial point set: d-subsets with every other point strictly on one side.
std::set<Mask> hull_facets(const SimplicialComplex& c, const Embedding& p);
// Facets of {F : every subset of F of size <= d - k is a face of c}.
std::set<Mask> stacked_ball_facets(const SimplicialComplex& c, int d, int k);
// d-subsets of {0..n-1} satisfying Gale's evenness condition.
std::set<Mask> gale_facets(int n, int d);

// The h-polynomial of a join is the product of the h-polynomials.
std::vector<long> h_product(const std::vector<long>& a, const std::vector<long>& b);

}  // namespace oracle
