#pragma once

#include "stresslab/complex.hpp"

#include <string_view>
#include <vector>

namespace stresslab {

enum class Field { Q, GF2 };

Field parse_field(std::string_view name);
const char* field_name(Field f);

// Reduced Betti numbers b_0 .. b_dim.  The complex {∅} yields an empty list;
// its only nonzero reduced group sits in degree -1.
std::vector<long> homology_ranks(const SimplicialComplex& c, Field field);

// Reduced homology of the n-sphere; n = -1 means exactly {∅}.
bool has_sphere_homology(const SimplicialComplex& c, int n, Field field);
bool is_acyclic(const SimplicialComplex& c, Field field);

// Every link (the empty face included) has the homology of a sphere of the
// complementary dimension.
bool is_homology_sphere(const SimplicialComplex& c, Field field);

// Acyclic; each link of a nonempty face has sphere or ball homology; the
// faces with acyclic links form a homology sphere one dimension down.
bool is_homology_ball(const SimplicialComplex& c, Field field);

}  // namespace stresslab
