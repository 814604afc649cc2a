#include "stresslab/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace stresslab {

namespace {

std::vector<Face> maximal_only(std::vector<Face> faces) {
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::stable_sort(faces.begin(), faces.end(),
                     [](const Face& a, const Face& b) { return a.size() > b.size(); });
    std::vector<Face> kept;
    for (auto& f : faces) {
        bool covered = std::any_of(kept.begin(), kept.end(), [&](const Face& k) { return is_subset(f, k); });
        if (!covered) kept.push_back(std::move(f));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

bool is_subset(const Face& a, const Face& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Face face_union(const Face& a, const Face& b) {
    Face out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Face face_minus(const Face& a, const Face& b) {
    Face out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

SimplicialComplex::SimplicialComplex() {
    build({}, {Face{}});
}

void SimplicialComplex::build(std::vector<std::string> labels, std::vector<Face> facets) {
    // Compact away unused labels.
    std::vector<char> used(labels.size(), 0);
    for (const auto& f : facets) {
        for (auto v : f) used[v] = 1;
    }
    std::vector<VertexId> remap(labels.size(), 0);
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!used[i]) continue;
        remap[i] = static_cast<VertexId>(kept.size());
        kept.push_back(std::move(labels[i]));
    }
    for (auto& f : facets) {
        for (auto& v : f) v = remap[v];
    }
    labels_ = std::move(kept);
    facets_ = maximal_only(std::move(facets));

    std::size_t top = 0;
    for (const auto& f : facets_) top = std::max(top, f.size());
    by_dim_.assign(top + 1, {});
    for (const auto& f : facets_) {
        const std::size_t n = f.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            Face s;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) s.push_back(f[i]);
            }
            by_dim_[s.size()].push_back(std::move(s));
        }
    }
    for (auto& level : by_dim_) {
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
    }
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<LabelFace>& facets,
                                                 const std::optional<std::vector<std::string>>& declared) {
    if (facets.empty()) throw ComplexError("empty facet list");
    std::set<std::string> labels;
    for (const auto& f : facets) labels.insert(f.begin(), f.end());
    if (declared) {
        std::set<std::string> decl(declared->begin(), declared->end());
        for (const auto& l : labels) {
            if (!decl.count(l)) throw ComplexError("unknown vertex label '" + l + "'");
        }
        for (const auto& l : decl) {
            if (!labels.count(l)) throw ComplexError("vertex '" + l + "' occurs in no facet");
        }
    }
    std::vector<std::string> table(labels.begin(), labels.end());
    std::vector<Face> idx;
    idx.reserve(facets.size());
    for (const auto& f : facets) {
        Face face;
        for (const auto& l : f) {
            face.push_back(static_cast<VertexId>(std::lower_bound(table.begin(), table.end(), l) - table.begin()));
        }
        std::sort(face.begin(), face.end());
        face.erase(std::unique(face.begin(), face.end()), face.end());
        idx.push_back(std::move(face));
    }
    SimplicialComplex c;
    c.build(std::move(table), std::move(idx));
    return c;
}

SimplicialComplex SimplicialComplex::from_indexed(const std::vector<std::string>& labels, std::vector<Face> facets) {
    if (facets.empty()) throw ComplexError("empty facet list");
    SimplicialComplex c;
    c.build(labels, std::move(facets));
    return c;
}

bool SimplicialComplex::is_pure() const {
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const Face& f) { return static_cast<int>(f.size()) == dim() + 1; });
}

const std::vector<Face>& SimplicialComplex::faces_of_dim(int k) const {
    if (k < -1 || k > dim()) throw ComplexError("no faces of dimension " + std::to_string(k));
    return by_dim_[static_cast<std::size_t>(k + 1)];
}

std::size_t SimplicialComplex::num_faces() const {
    std::size_t n = 0;
    for (const auto& level : by_dim_) n += level.size();
    return n;
}

std::vector<Face> SimplicialComplex::all_faces() const {
    std::vector<Face> out;
    for (const auto& level : by_dim_) out.insert(out.end(), level.begin(), level.end());
    return out;
}

bool SimplicialComplex::contains(const Face& f) const {
    if (f.size() >= by_dim_.size()) return false;
    const auto& level = by_dim_[f.size()];
    return std::binary_search(level.begin(), level.end(), f);
}

bool SimplicialComplex::contains_labels(const LabelFace& f) const {
    Face idx;
    for (const auto& l : f) {
        auto v = index_of(l);
        if (!v) return false;
        idx.push_back(*v);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return contains(idx);
}

std::optional<VertexId> SimplicialComplex::index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<VertexId>(it - labels_.begin());
}

Face SimplicialComplex::face_of(const LabelFace& labels) const {
    Face f;
    for (const auto& l : labels) {
        auto v = index_of(l);
        if (!v) throw ComplexError("unknown vertex label '" + l + "'");
        f.push_back(*v);
    }
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

LabelFace SimplicialComplex::labels_of(const Face& f) const {
    LabelFace out;
    out.reserve(f.size());
    for (auto v : f) out.push_back(labels_[v]);
    return out;
}

std::vector<LabelFace> SimplicialComplex::facet_labels() const {
    std::vector<LabelFace> out;
    for (const auto& f : facets_) out.push_back(labels_of(f));
    return out;
}

Face translate(const Face& f, const SimplicialComplex& from, const SimplicialComplex& to) {
    return to.face_of(from.labels_of(f));
}

SimplicialComplex complex_of(const std::vector<LabelFace>& facets) {
    return SimplicialComplex::from_facets(facets);
}

SimplicialComplex simplex(const LabelFace& vertices) {
    return SimplicialComplex::from_facets({vertices});
}

SimplicialComplex simplex_boundary_on(const LabelFace& vertices) {
    if (vertices.empty()) throw ComplexError("boundary of the empty simplex");
    std::vector<LabelFace> facets;
    for (std::size_t skip = 0; skip < vertices.size(); ++skip) {
        LabelFace f;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (i != skip) f.push_back(vertices[i]);
        }
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_facets(facets);
}

SimplicialComplex star(const SimplicialComplex& c, const Face& f) {
    if (!c.contains(f)) throw ComplexError("star of a non-face");
    std::vector<Face> facets;
    for (const auto& g : c.facets()) {
        if (is_subset(f, g)) facets.push_back(g);
    }
    return SimplicialComplex::from_indexed(c.labels(), std::move(facets));
}

SimplicialComplex link(const SimplicialComplex& c, const Face& f) {
    if (!c.contains(f)) throw ComplexError("link of a non-face");
    std::vector<Face> facets;
    for (const auto& g : c.facets()) {
        if (is_subset(f, g)) facets.push_back(face_minus(g, f));
    }
    return SimplicialComplex::from_indexed(c.labels(), std::move(facets));
}

SimplicialComplex antistar(const SimplicialComplex& c, const Face& f) {
    if (f.empty()) throw ComplexError("antistar of the empty face is void");
    std::vector<Face> facets;
    for (const auto& g : c.facets()) {
        if (!is_subset(f, g)) {
            facets.push_back(g);
            continue;
        }
        // Maximal subfaces of g avoiding f: drop one vertex of f.
        for (auto v : f) {
            Face h;
            for (auto u : g) {
                if (u != v) h.push_back(u);
            }
            facets.push_back(std::move(h));
        }
    }
    return SimplicialComplex::from_indexed(c.labels(), std::move(facets));
}

SimplicialComplex induced(const SimplicialComplex& c, const Face& vertices) {
    std::vector<Face> facets;
    for (const auto& g : c.facets()) {
        Face h;
        std::set_intersection(g.begin(), g.end(), vertices.begin(), vertices.end(), std::back_inserter(h));
        facets.push_back(std::move(h));
    }
    return SimplicialComplex::from_indexed(c.labels(), std::move(facets));
}

SimplicialComplex skeleton(const SimplicialComplex& c, int k) {
    std::vector<Face> facets;
    for (int j = -1; j <= std::min(k, c.dim()); ++j) {
        for (const auto& f : c.faces_of_dim(j)) facets.push_back(f);
    }
    return SimplicialComplex::from_indexed(c.labels(), std::move(facets));
}

SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    for (const auto& l : a.labels()) {
        if (b.index_of(l)) throw ComplexError("join: label '" + l + "' occurs in both complexes");
    }
    std::vector<LabelFace> facets;
    for (const auto& f : a.facets()) {
        for (const auto& g : b.facets()) {
            LabelFace h = a.labels_of(f);
            for (auto v : g) h.push_back(b.label(v));
            facets.push_back(std::move(h));
        }
    }
    return SimplicialComplex::from_facets(facets);
}

SimplicialComplex cone(const SimplicialComplex& c, const std::string& apex) {
    return join(c, simplex({apex}));
}

std::vector<Face> missing_faces(const SimplicialComplex& c) {
    std::vector<Face> out;
    const auto n = static_cast<VertexId>(c.num_vertices());
    for (int k = 0; k <= c.dim(); ++k) {
        for (const auto& f : c.faces_of_dim(k)) {
            for (VertexId v = f.back() + 1; v < n; ++v) {
                Face cand = f;
                cand.push_back(v);
                if (c.contains(cand)) continue;
                bool all = true;
                for (std::size_t skip = 0; skip + 1 < cand.size() && all; ++skip) {
                    Face sub;
                    for (std::size_t i = 0; i < cand.size(); ++i) {
                        if (i != skip) sub.push_back(cand[i]);
                    }
                    all = c.contains(sub);
                }
                if (all) out.push_back(std::move(cand));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

bool is_flag(const SimplicialComplex& c) {
    auto m = missing_faces(c);
    return std::all_of(m.begin(), m.end(), [](const Face& f) { return f.size() == 2; });
}

std::optional<int> max_missing_dim(const SimplicialComplex& c) {
    auto m = missing_faces(c);
    if (m.empty()) return std::nullopt;
    return static_cast<int>(m.back().size()) - 1;
}

bool is_connected(const SimplicialComplex& c) {
    const std::size_t n = c.num_vertices();
    if (n == 0) return false;
    std::vector<std::vector<VertexId>> adj(n);
    if (c.dim() >= 1) {
        for (const auto& e : c.faces_of_dim(1)) {
            adj[e[0]].push_back(e[1]);
            adj[e[1]].push_back(e[0]);
        }
    }
    std::vector<char> seen(n, 0);
    std::deque<VertexId> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                queue.push_back(u);
            }
        }
    }
    return count == n;
}

bool is_strongly_connected(const SimplicialComplex& c) {
    if (!c.is_pure()) return false;
    const auto& facets = c.facets();
    std::map<Face, std::vector<std::size_t>> by_ridge;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        for (std::size_t skip = 0; skip < facets[i].size(); ++skip) {
            Face r;
            for (std::size_t t = 0; t < facets[i].size(); ++t) {
                if (t != skip) r.push_back(facets[i][t]);
            }
            by_ridge[r].push_back(i);
        }
    }
    std::vector<std::vector<std::size_t>> adj(facets.size());
    for (const auto& [r, fs] : by_ridge) {
        for (std::size_t a = 0; a < fs.size(); ++a) {
            for (std::size_t b = a + 1; b < fs.size(); ++b) {
                adj[fs[a]].push_back(fs[b]);
                adj[fs[b]].push_back(fs[a]);
            }
        }
    }
    std::vector<char> seen(facets.size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto u : adj[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                queue.push_back(u);
            }
        }
    }
    return count == facets.size();
}

StructureReport classify(const SimplicialComplex& c) {
    StructureReport rep;
    rep.pure = c.is_pure();
    rep.strongly_connected = is_strongly_connected(c);
    if (!rep.pure || c.dim() < 0) return rep;

    std::map<Face, int> ridge_count;
    for (const auto& f : c.facets()) {
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Face r;
            for (std::size_t t = 0; t < f.size(); ++t) {
                if (t != skip) r.push_back(f[t]);
            }
            ++ridge_count[r];
        }
    }
    std::vector<Face> boundary_ridges;
    for (const auto& [r, n] : ridge_count) {
        if (n > 2) return rep;
        if (n == 1) boundary_ridges.push_back(r);
    }
    if (boundary_ridges.empty()) {
        rep.pseudomanifold = Pseudomanifold::without_boundary;
    } else {
        rep.pseudomanifold = Pseudomanifold::with_boundary;
        rep.boundary = SimplicialComplex::from_indexed(c.labels(), std::move(boundary_ridges));
    }

    // Normal: every face of codimension >= 2 (the empty face included) has a
    // connected link.
    rep.normal = true;
    for (int k = -1; k <= c.dim() - 2 && rep.normal; ++k) {
        for (const auto& f : c.faces_of_dim(k)) {
            if (!is_connected(link(c, f))) {
                rep.normal = false;
                break;
            }
        }
    }
    return rep;
}

std::vector<Face> minimal_interior_faces(const SimplicialComplex& c) {
    auto rep = classify(c);
    if (rep.pseudomanifold != Pseudomanifold::with_boundary) {
        throw ComplexError("minimal interior faces need a pseudomanifold with boundary");
    }
    const SimplicialComplex& bd = *rep.boundary;
    std::vector<Face> out;
    for (int k = 0; k <= c.dim(); ++k) {
        for (const auto& f : c.faces_of_dim(k)) {
            const Face& g = f;
            auto in_boundary = [&](const Face& h) {
                for (auto v : h) {
                    if (!bd.index_of(c.label(v))) return false;
                }
                return bd.contains(translate(h, c, bd));
            };
            if (in_boundary(g)) continue;
            bool minimal = true;
            for (std::size_t skip = 0; skip < g.size() && minimal; ++skip) {
                Face sub;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    if (i != skip) sub.push_back(g[i]);
                }
                minimal = in_boundary(sub);
            }
            if (minimal) out.push_back(g);
        }
    }
    return out;
}

FHGVectors fhg(const SimplicialComplex& c, int d) {
    if (c.dim() != d - 1) {
        throw ComplexError("dimension mismatch: complex has dimension " + std::to_string(c.dim()) + ", expected " +
                           std::to_string(d - 1));
    }
    FHGVectors v;
    v.d = d;
    for (int k = 0; k < d; ++k) v.f.push_back(static_cast<long>(c.faces_of_dim(k).size()));
    auto f_at = [&](int i) { return i == 0 ? 1L : v.f[static_cast<std::size_t>(i - 1)]; };  // f_{i-1}
    for (int j = 0; j <= d; ++j) {
        long h = 0;
        for (int i = 0; i <= j; ++i) {
            long term = binomial_long(d - i, d - j) * f_at(i);
            h += ((j - i) % 2 == 0) ? term : -term;
        }
        v.h.push_back(h);
    }
    v.g.push_back(1);
    for (int j = 1; j <= (d + 1) / 2; ++j) v.g.push_back(v.h[static_cast<std::size_t>(j)] - v.h[static_cast<std::size_t>(j - 1)]);
    return v;
}

long g_at(const FHGVectors& v, int j) {
    auto h = [&](int i) { return (i < 0 || i > v.d) ? 0L : v.h[static_cast<std::size_t>(i)]; };
    return h(j) - h(j - 1);
}

}  // namespace stresslab
