#include "stresslab/embedding.hpp"

#include "stresslab/lp.hpp"

#include <algorithm>
#include <map>

namespace stresslab {

const RowVector& Embedding::at(const std::string& label) const {
    auto it = coords.find(label);
    if (it == coords.end()) throw EmbeddingError("no coordinates for vertex '" + label + "'");
    return it->second;
}

linalg::DenseMatrix Embedding::for_complex(const SimplicialComplex& c) const {
    linalg::DenseMatrix out;
    out.reserve(c.num_vertices());
    for (const auto& l : c.labels()) out.push_back(at(l));
    return out;
}

Embedding Embedding::restricted_to(const SimplicialComplex& c) const {
    Embedding e;
    e.dim = dim;
    for (const auto& l : c.labels()) e.coords[l] = at(l);
    return e;
}

Embedding natural(const SimplicialComplex& c, const std::map<std::string, std::vector<std::string>>& table) {
    std::map<std::string, RowVector> exact;
    for (const auto& [label, entries] : table) {
        RowVector row;
        for (const auto& s : entries) {
            try {
                row.push_back(parse_rational(s));
            } catch (const ParseError& e) {
                throw EmbeddingError("vertex '" + label + "': " + e.what());
            }
        }
        exact[label] = std::move(row);
    }
    return natural(c, exact);
}

Embedding natural(const SimplicialComplex& c, const std::map<std::string, RowVector>& table) {
    Embedding e;
    e.dim = -1;
    for (const auto& l : c.labels()) {
        auto it = table.find(l);
        if (it == table.end()) throw EmbeddingError("coordinate table misses vertex '" + l + "'");
        if (e.dim == -1) e.dim = static_cast<int>(it->second.size());
        if (static_cast<int>(it->second.size()) != e.dim) {
            throw EmbeddingError("vertex '" + l + "' has the wrong number of coordinates");
        }
        e.coords[l] = it->second;
    }
    if (e.dim < 0) e.dim = 0;
    return e;
}

Integer uniform_integer(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection sampling on 64-bit words keeps the stream platform-independent.
    const unsigned __int128 range = static_cast<unsigned __int128>(bound) * 2 + 1;
    const unsigned __int128 space = static_cast<unsigned __int128>(1) << 64;
    const unsigned __int128 limit = space - space % range;
    for (;;) {
        unsigned __int128 x = rng();
        if (x < limit) {
            auto off = static_cast<std::uint64_t>(x % range);
            Integer r(off);
            r -= Integer(bound);
            return r;
        }
    }
}

Embedding random_integer_embedding(const std::vector<std::string>& labels, int d, std::mt19937_64& rng,
                                   std::uint64_t bound) {
    Embedding e;
    e.dim = d;
    for (const auto& l : labels) {
        RowVector row;
        for (int i = 0; i < d; ++i) row.push_back(Rational(uniform_integer(rng, bound)));
        e.coords[l] = std::move(row);
    }
    return e;
}

std::size_t linear_rank(const linalg::DenseMatrix& points) {
    if (points.empty()) return 0;
    return linalg::rank(points, points[0].size());
}

std::size_t affine_rank(const linalg::DenseMatrix& points) {
    if (points.empty()) return 0;
    linalg::DenseMatrix lifted = points;
    for (auto& r : lifted) r.push_back(1);
    return linalg::rank(lifted, lifted[0].size());
}

GenericityCertificate certify(const SimplicialComplex& c, const Embedding& p) {
    GenericityCertificate cert;
    auto pts = p.for_complex(c);
    auto points_of = [&](const Face& f) {
        linalg::DenseMatrix m;
        for (auto v : f) m.push_back(pts[v]);
        return m;
    };
    cert.facet_independent = std::all_of(c.facets().begin(), c.facets().end(), [&](const Face& f) {
        return linear_rank(points_of(f)) == f.size();
    });
    std::map<Face, std::vector<std::size_t>> by_ridge;
    for (std::size_t i = 0; i < c.facets().size(); ++i) {
        const Face& f = c.facets()[i];
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Face r;
            for (std::size_t t = 0; t < f.size(); ++t) {
                if (t != skip) r.push_back(f[t]);
            }
            by_ridge[r].push_back(i);
        }
    }
    cert.adjacent_pairs_affinely_independent = true;
    for (const auto& [r, fs] : by_ridge) {
        for (std::size_t a = 0; a < fs.size() && cert.adjacent_pairs_affinely_independent; ++a) {
            for (std::size_t b = a + 1; b < fs.size(); ++b) {
                Face u = face_union(c.facets()[fs[a]], c.facets()[fs[b]]);
                if (affine_rank(points_of(u)) != u.size()) {
                    cert.adjacent_pairs_affinely_independent = false;
                    break;
                }
            }
        }
        if (!cert.adjacent_pairs_affinely_independent) break;
    }
    return cert;
}

GenericEmbedding generic_random(const SimplicialComplex& c, int d, std::uint64_t seed, std::uint64_t bound) {
    if (bound == 0) throw EmbeddingError("generic embedding needs a positive coordinate bound");
    if (d < c.dim() + 1) throw EmbeddingError("ambient dimension below dim + 1");
    constexpr int retry_cap = 16;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        Embedding e = random_integer_embedding(c.labels(), d, rng, bound);
        GenericityCertificate cert = certify(c, e);
        cert.seed = seed;
        cert.resample_count = attempt;
        if (cert.passes()) return {std::move(e), cert};
    }
    throw EmbeddingError("no generic embedding after " + std::to_string(retry_cap) + " draws");
}

ThetaSystem theta(const SimplicialComplex& c, const Embedding& p) {
    ThetaSystem t;
    t.dim = p.dim;
    auto pts = p.for_complex(c);
    t.rows.assign(static_cast<std::size_t>(p.dim + 1), RowVector(c.num_vertices()));
    for (std::size_t v = 0; v < pts.size(); ++v) {
        for (int i = 0; i < p.dim; ++i) t.rows[static_cast<std::size_t>(i)][v] = pts[v][static_cast<std::size_t>(i)];
        t.rows[static_cast<std::size_t>(p.dim)][v] = 1;
    }
    return t;
}

std::optional<std::pair<RowVector, Rational>> hyperplane_through(const linalg::DenseMatrix& points, int dim) {
    linalg::DenseMatrix rows;
    for (const auto& q : points) {
        RowVector r = q;
        r.push_back(-1);
        rows.push_back(std::move(r));
    }
    auto ker = linalg::nullspace(rows, static_cast<std::size_t>(dim + 1));
    if (ker.size() != 1) return std::nullopt;
    RowVector a(ker[0].begin(), ker[0].begin() + dim);
    if (linalg::is_zero(a)) return std::nullopt;
    return std::make_pair(a, ker[0][static_cast<std::size_t>(dim)]);
}

PolytopalCheck check_polytopal(const SimplicialComplex& c, const Embedding& p) {
    if (!c.is_pure() || c.dim() != p.dim - 1) {
        throw EmbeddingError("polytopality needs a pure complex of dimension one below the ambient space");
    }
    auto pts = p.for_complex(c);
    PolytopalCheck res;
    for (const auto& f : c.facets()) {
        linalg::DenseMatrix fp;
        for (auto v : f) fp.push_back(pts[v]);
        auto hp = hyperplane_through(fp, p.dim);
        if (!hp) throw EmbeddingError("degenerate facet hyperplane");
        const auto& [a, b] = *hp;
        int side = 0;
        for (VertexId u = 0; u < pts.size(); ++u) {
            if (std::binary_search(f.begin(), f.end(), u)) continue;
            Rational val = -b;
            for (int i = 0; i < p.dim; ++i) val += a[static_cast<std::size_t>(i)] * pts[u][static_cast<std::size_t>(i)];
            int s = val.sign();
            if (s == 0 || (side != 0 && s != side)) {
                res.witness = std::make_pair(f, u);
                return res;
            }
            side = s;
        }
    }
    res.ok = true;
    return res;
}

namespace {

RowVector apply_cone_map(const RowVector& diff, const VertexFigureStep& step) {
    RowVector out;
    Rational last = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        if (i != step.dropped) out.push_back(diff[i]);
        last += step.normal[i] * diff[i];
    }
    out.push_back(last);
    return out;
}

}  // namespace

QuotientEmbedding quotient_embedding(const SimplicialComplex& c, const Embedding& p, const Face& f) {
    if (!check_polytopal(c, p).ok) throw EmbeddingError("quotient embedding needs a polytopal input");
    QuotientEmbedding q{c, p.restricted_to(c), {}};
    for (const auto& apex : c.labels_of(f)) {
        const SimplicialComplex& cur = q.link;
        const Embedding& emb = q.embedding;
        const RowVector& origin = emb.at(apex);
        const std::size_t m = static_cast<std::size_t>(emb.dim);

        // a.(p(u) - p(apex)) >= 1 for every other vertex.
        linalg::DenseMatrix a_rows;
        RowVector b;
        for (const auto& u : cur.labels()) {
            if (u == apex) continue;
            RowVector row(m);
            for (std::size_t i = 0; i < m; ++i) row[i] = origin[i] - emb.at(u)[i];
            a_rows.push_back(std::move(row));
            b.push_back(-1);
        }
        auto sol = lp::feasible_point(a_rows, b, m);
        if (!sol) throw EmbeddingError("vertex '" + apex + "' cannot be separated from the others");

        VertexFigureStep step;
        step.apex = apex;
        step.normal = *sol;
        while (step.dropped < m && step.normal[step.dropped].sign() == 0) ++step.dropped;

        SimplicialComplex lk = link(cur, cur.face_of({apex}));
        Embedding next;
        next.dim = emb.dim - 1;
        for (const auto& u : lk.labels()) {
            RowVector diff(m);
            for (std::size_t i = 0; i < m; ++i) diff[i] = emb.at(u)[i] - origin[i];
            RowVector mapped = apply_cone_map(diff, step);
            Rational s = mapped.back();
            mapped.pop_back();
            for (auto& x : mapped) x /= s;
            step.scale[u] = s;
            next.coords[u] = std::move(mapped);
        }
        q.steps.push_back(std::move(step));
        q.link = std::move(lk);
        q.embedding = std::move(next);
    }
    if (q.link.dim() >= 0 && !check_polytopal(q.link, q.embedding).ok) {
        throw EmbeddingError("vertex figure failed the polytopality check");
    }
    return q;
}

Embedding cone_form(const Embedding& p, const VertexFigureStep& step, const SimplicialComplex& star_complex) {
    const RowVector& origin = p.at(step.apex);
    Embedding out;
    out.dim = p.dim;
    for (const auto& u : star_complex.labels()) {
        RowVector diff(origin.size());
        for (std::size_t i = 0; i < origin.size(); ++i) diff[i] = p.at(u)[i] - origin[i];
        out.coords[u] = apply_cone_map(diff, step);
    }
    return out;
}

Embedding affine_transform(const Embedding& p, const linalg::DenseMatrix& a, const RowVector& b) {
    if (a.size() != static_cast<std::size_t>(p.dim) || linalg::determinant(a).sign() == 0) {
        throw EmbeddingError("affine transform needs an invertible square matrix");
    }
    Embedding out;
    out.dim = p.dim;
    for (const auto& [label, x] : p.coords) {
        RowVector y = b;
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
        }
        out.coords[label] = std::move(y);
    }
    return out;
}

Embedding canonical(const Embedding& p) {
    const std::size_t d = static_cast<std::size_t>(p.dim);
    if (p.coords.empty()) throw EmbeddingError("empty embedding");
    const RowVector& origin = p.coords.begin()->second;
    linalg::DenseMatrix chosen;
    for (auto it = std::next(p.coords.begin()); it != p.coords.end() && chosen.size() < d; ++it) {
        RowVector w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = it->second[i] - origin[i];
        chosen.push_back(w);
        if (linalg::rank(chosen, d) < chosen.size()) chosen.pop_back();
    }
    if (chosen.size() < d) throw EmbeddingError("points do not affinely span the ambient space");
    // Columns of W are the chosen difference vectors; map x -> W^{-1}(x - origin).
    linalg::DenseMatrix w(d, RowVector(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) w[i][j] = chosen[j][i];
    }
    auto inv = linalg::inverse(w);
    RowVector shift(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) shift[i] -= (*inv)[i][j] * origin[j];
    }
    return affine_transform(p, *inv, shift);
}

}  // namespace stresslab
