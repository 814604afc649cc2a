#include "stresslab/homology.hpp"

#include "stresslab/linalg.hpp"

#include <algorithm>

namespace stresslab {

Field parse_field(std::string_view name) {
    if (name == "Q" || name == "q") return Field::Q;
    if (name == "GF2" || name == "gf2" || name == "Z2") return Field::GF2;
    throw StressLabError("unknown field '" + std::string(name) + "'");
}

const char* field_name(Field f) {
    return f == Field::Q ? "Q" : "GF2";
}

namespace {

// Rank of the boundary map from k-faces to (k-1)-faces, k >= 0.
std::size_t boundary_rank(const SimplicialComplex& c, int k, Field field) {
    const auto& rows_faces = c.faces_of_dim(k);
    const auto& cols_faces = c.faces_of_dim(k - 1);
    auto col_of = [&](const Face& f) {
        return static_cast<std::uint32_t>(std::lower_bound(cols_faces.begin(), cols_faces.end(), f) - cols_faces.begin());
    };
    if (field == Field::GF2) {
        std::vector<std::vector<std::uint32_t>> rows;
        rows.reserve(rows_faces.size());
        for (const auto& f : rows_faces) {
            std::vector<std::uint32_t> r;
            for (std::size_t skip = 0; skip < f.size(); ++skip) {
                Face sub;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (i != skip) sub.push_back(f[i]);
                }
                r.push_back(col_of(sub));
            }
            rows.push_back(std::move(r));
        }
        return linalg::rank_gf2(rows, cols_faces.size());
    }
    linalg::SparseMatrix rows;
    rows.reserve(rows_faces.size());
    for (const auto& f : rows_faces) {
        linalg::SparseRow r;
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Face sub;
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i != skip) sub.push_back(f[i]);
            }
            r.entries.emplace_back(col_of(sub), Rational(skip % 2 == 0 ? 1 : -1));
        }
        std::sort(r.entries.begin(), r.entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        rows.push_back(std::move(r));
    }
    return linalg::rank(rows, cols_faces.size());
}

}  // namespace

std::vector<long> homology_ranks(const SimplicialComplex& c, Field field) {
    const int dim = c.dim();
    std::vector<long> ranks(static_cast<std::size_t>(dim + 2), 0);  // ranks[k] = rank of boundary on k-faces
    for (int k = 0; k <= dim; ++k) ranks[static_cast<std::size_t>(k)] = static_cast<long>(boundary_rank(c, k, field));
    std::vector<long> betti;
    for (int k = 0; k <= dim; ++k) {
        long fk = static_cast<long>(c.faces_of_dim(k).size());
        betti.push_back(fk - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k + 1)]);
    }
    return betti;
}

bool has_sphere_homology(const SimplicialComplex& c, int n, Field field) {
    if (n == -1) return c.dim() == -1;
    if (c.dim() != n) return false;
    auto b = homology_ranks(c, field);
    for (int k = 0; k < n; ++k) {
        if (b[static_cast<std::size_t>(k)] != 0) return false;
    }
    return b[static_cast<std::size_t>(n)] == 1;
}

bool is_acyclic(const SimplicialComplex& c, Field field) {
    if (c.dim() == -1) return false;
    auto b = homology_ranks(c, field);
    return std::all_of(b.begin(), b.end(), [](long x) { return x == 0; });
}

bool is_homology_sphere(const SimplicialComplex& c, Field field) {
    const int top = c.dim();
    if (!c.is_pure()) return false;
    for (int k = -1; k <= top; ++k) {
        for (const auto& f : c.faces_of_dim(k)) {
            const int n = top - static_cast<int>(f.size());
            if (n == -1) continue;  // facet links are {∅}
            if (!has_sphere_homology(k == -1 ? c : link(c, f), n, field)) return false;
        }
    }
    return true;
}

bool is_homology_ball(const SimplicialComplex& c, Field field) {
    const int top = c.dim();
    if (top < 0 || !c.is_pure()) return false;
    if (!is_acyclic(c, field)) return false;
    if (top == 0) return c.num_vertices() == 1;
    std::vector<Face> boundary_faces;
    for (int k = 0; k <= top; ++k) {
        for (const auto& f : c.faces_of_dim(k)) {
            const int n = top - static_cast<int>(f.size());
            SimplicialComplex lk = link(c, f);
            if (n >= 0 && is_acyclic(lk, field)) {
                boundary_faces.push_back(f);
            } else if (!has_sphere_homology(lk, n, field)) {
                return false;
            }
        }
    }
    if (boundary_faces.empty()) return false;
    SimplicialComplex bd = SimplicialComplex::from_indexed(c.labels(), boundary_faces);
    // The collected set must itself be closed under taking nonempty faces.
    if (bd.num_faces() != boundary_faces.size() + 1) return false;
    return is_homology_sphere(bd, field) && bd.dim() == top - 1;
}

}  // namespace stresslab
