#include "qdm/lattice.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace qdm {

namespace {

// Vertex displacement of each edge class, anchor -> target.
constexpr std::array<std::array<int, 2>, 3> kClassDelta = {{{1, 0}, {0, 1}, {1, -1}}};

}  // namespace

int Patch::wrap_i(int i) const { return ((i % width_) + width_) % width_; }
int Patch::wrap_j(int j) const { return ((j % height_) + height_) % height_; }

int Patch::vertex_at(int i, int j) const {
    if (boundary_ == Boundary::torus) {
        return wrap_j(j) * width_ + wrap_i(i);
    }
    if (i < 0 || i >= width_ || j < 0 || j >= height_) return -1;
    return j * width_ + i;
}

int Patch::edge_at(int cls, int i, int j) const {
    if (boundary_ == Boundary::torus) {
        i = wrap_i(i);
        j = wrap_j(j);
    } else if (i < 0 || i >= width_ || j < 0 || j >= height_) {
        return -1;
    }
    return edge_id_[j * width_ + i][cls];
}

int Patch::face_at(int kind, int i, int j) const {
    if (boundary_ == Boundary::torus) {
        i = wrap_i(i);
        j = wrap_j(j);
    } else if (i < 0 || i >= width_ || j < 0 || j >= height_) {
        return -1;
    }
    return face_id_[j * width_ + i][kind];
}

bool Patch::vertex_interior(int v) const {
    for (int f : faces_around_[v])
        if (f < 0) return false;
    for (int e : spokes_[v])
        if (e < 0) return false;
    return true;
}

bool Patch::vertex_on_face(int v, int f) const {
    const FaceRec& fr = faces_[f];
    return fr.verts[0] == v || fr.verts[1] == v || fr.verts[2] == v;
}

std::shared_ptr<const Patch> Patch::make(int width, int height, Boundary boundary) {
    if (width < 2 || height < 2)
        throw TooSmall("patch must be at least 2x2, got " + std::to_string(width) + "x" +
                       std::to_string(height));
    auto patch = std::shared_ptr<Patch>(new Patch());
    Patch& p = *patch;
    p.width_ = width;
    p.height_ = height;
    p.boundary_ = boundary;

    const int slots = width * height;
    p.vertex_ij_.resize(slots);
    p.vertex_id_.assign(slots, -1);
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i) {
            p.vertex_ij_[j * width + i] = {i, j};
            p.vertex_id_[j * width + i] = j * width + i;
        }

    p.edge_id_.assign(slots, {-1, -1, -1});
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i)
            for (int cls = 0; cls < 3; ++cls) {
                const int ti = i + kClassDelta[cls][0], tj = j + kClassDelta[cls][1];
                const int v0 = p.vertex_at(i, j), v1 = p.vertex_at(ti, tj);
                if (v1 < 0) continue;
                EdgeRec rec;
                rec.v0 = v0;
                rec.v1 = v1;
                rec.cls = cls;
                rec.anchor = {i, j};
                p.edge_id_[j * width + i][cls] = static_cast<int>(p.edges_.size());
                p.edges_.push_back(rec);
            }

    p.face_id_.assign(slots, {-1, -1});
    auto add_face = [&](int kind, int i, int j, std::array<std::array<int, 2>, 3> vij,
                        std::array<std::array<int, 3>, 3> eij) {
        std::array<int, 3> verts{};
        for (int k = 0; k < 3; ++k) {
            verts[k] = p.vertex_at(vij[k][0], vij[k][1]);
            if (verts[k] < 0) return;
        }
        std::array<int, 3> edges{};
        for (int k = 0; k < 3; ++k) {
            edges[k] = p.edge_at(eij[k][0], eij[k][1], eij[k][2]);
            if (edges[k] < 0) return;
        }
        FaceRec rec;
        rec.kind = kind;
        rec.anchor = {i, j};
        rec.verts = verts;
        rec.edges = edges;
        p.face_id_[j * width + i][kind] = static_cast<int>(p.faces_.size());
        p.faces_.push_back(rec);
    };
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i) {
            // U(i,j): (i,j) -> (i+1,j) -> (i,j+1), ccw; edge k joins verts k, k+1.
            add_face(U, i, j, {{{i, j}, {i + 1, j}, {i, j + 1}}},
                     {{{E, i, j}, {SE, i, j + 1}, {NE, i, j}}});
            // D(i,j): (i+1,j) -> (i+1,j+1) -> (i,j+1), ccw.
            add_face(D, i, j, {{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}},
                     {{{NE, i + 1, j}, {E, i, j + 1}, {SE, i, j + 1}}});
        }

    // Side faces per edge class: E left U(i,j) right D(i,j-1);
    // NE left D(i-1,j) right U(i,j); SE left D(i,j-1) right U(i,j-1).
    for (auto& e : p.edges_) {
        const int i = e.anchor[0], j = e.anchor[1];
        switch (e.cls) {
            case E:
                e.left_face = p.face_at(U, i, j);
                e.right_face = p.face_at(D, i, j - 1);
                break;
            case NE:
                e.left_face = p.face_at(D, i - 1, j);
                e.right_face = p.face_at(U, i, j);
                break;
            case SE:
                e.left_face = p.face_at(D, i, j - 1);
                e.right_face = p.face_at(U, i, j - 1);
                break;
        }
    }

    // Counterclockwise fans: faces between rays 60k..60(k+1) degrees, and the
    // spoke edges sitting on the rays.
    p.faces_around_.resize(slots);
    p.spokes_.resize(slots);
    for (int j = 0; j < height; ++j)
        for (int i = 0; i < width; ++i) {
            const int v = j * width + i;
            p.faces_around_[v] = {p.face_at(U, i, j),     p.face_at(D, i - 1, j),
                                  p.face_at(U, i - 1, j), p.face_at(D, i - 1, j - 1),
                                  p.face_at(U, i, j - 1), p.face_at(D, i, j - 1)};
            p.spokes_[v] = {p.edge_at(NE, i, j),    p.edge_at(SE, i - 1, j + 1),
                            p.edge_at(E, i - 1, j), p.edge_at(NE, i, j - 1),
                            p.edge_at(SE, i, j),    p.edge_at(E, i, j)};
        }
    return patch;
}

std::string Patch::dump() const {
    std::ostringstream os;
    os << (boundary_ == Boundary::torus ? "torus" : "open") << " " << width_ << "x" << height_
       << ": V=" << vertex_count() << " E=" << edge_count() << " F=" << face_count() << "\n";
    static const char* names[3] = {"E", "NE", "SE"};
    for (int e = 0; e < edge_count(); ++e) {
        const EdgeRec& r = edges_[e];
        os << "  e" << e << " " << names[r.cls] << "(" << r.anchor[0] << "," << r.anchor[1]
           << ") " << r.v0 << "->" << r.v1 << " L=f" << r.left_face << " R=f" << r.right_face
           << "\n";
    }
    return os.str();
}

Triangle opposite(const Triangle& t) {
    Triangle o = t;
    std::swap(o.s0, o.s1);
    return o;
}

void validate_triangle(const Patch& p, const Triangle& t) {
    if (t.edge < 0 || t.edge >= p.edge_count()) throw Error("triangle references bad edge");
    const Patch::EdgeRec& e = p.edge(t.edge);
    if (t.kind == TriangleKind::direct) {
        if (t.s0.face != t.s1.face) throw Error("direct triangle sites must share the face");
        const bool forward = e.v0 == t.s0.vertex && e.v1 == t.s1.vertex;
        const bool backward = e.v1 == t.s0.vertex && e.v0 == t.s1.vertex;
        if (!forward && !backward) throw Error("direct triangle edge does not join its sites");
        if (e.left_face != t.s0.face && e.right_face != t.s0.face)
            throw Error("direct triangle face does not border its edge");
    } else {
        if (t.s0.vertex != t.s1.vertex) throw Error("dual triangle sites must share the vertex");
        if (e.v0 != t.s0.vertex && e.v1 != t.s0.vertex)
            throw Error("dual triangle vertex is not an endpoint of its edge");
        const bool forward = e.right_face == t.s0.face && e.left_face == t.s1.face;
        const bool backward = e.left_face == t.s0.face && e.right_face == t.s1.face;
        if (!forward && !backward) throw Error("dual triangle faces do not border its edge");
    }
}

int triangle_sign(const Patch& p, const Triangle& t) {
    const Patch::EdgeRec& e = p.edge(t.edge);
    if (t.kind == TriangleKind::direct) {
        const bool co = e.v0 == t.s0.vertex;
        const bool face_right = co ? (t.s0.face == e.right_face) : (t.s0.face == e.left_face);
        return face_right ? 1 : -1;
    }
    // The dual edge crosses e from right to left, so walking along e* the
    // origin of e lies to the left.
    const bool co = t.s0.face == e.right_face;
    const bool at_origin = t.s0.vertex == e.v0;
    const bool vertex_left = co == at_origin;
    return vertex_left ? 1 : -1;
}

std::array<int, 2> triangle_lift(const Patch& p, const Triangle& t) {
    if (t.kind == TriangleKind::dual) return {0, 0};
    const Patch::EdgeRec& e = p.edge(t.edge);
    const auto d = kClassDelta[e.cls];
    if (e.v0 == t.s0.vertex) return {d[0], d[1]};
    return {-d[0], -d[1]};
}

Ribbon::Ribbon(std::vector<Triangle> triangles) : triangles_(std::move(triangles)) {}

Ribbon Ribbon::validated(const Patch& p, std::vector<Triangle> triangles) {
    std::vector<int> used;
    for (size_t k = 0; k < triangles.size(); ++k) {
        validate_triangle(p, triangles[k]);
        if (k + 1 < triangles.size() && !(triangles[k].s1 == triangles[k + 1].s0))
            throw EndpointMismatch("triangles " + std::to_string(k) + " and " +
                                   std::to_string(k + 1) + " do not chain");
        if (std::find(used.begin(), used.end(), triangles[k].edge) != used.end())
            throw EdgeReuse("edge " + std::to_string(triangles[k].edge) +
                            " used by more than one triangle");
        used.push_back(triangles[k].edge);
    }
    return Ribbon(std::move(triangles));
}

Site Ribbon::start() const {
    if (triangles_.empty()) throw EmptyRibbon("empty ribbon has no start site");
    return triangles_.front().s0;
}

Site Ribbon::end() const {
    if (triangles_.empty()) throw EmptyRibbon("empty ribbon has no end site");
    return triangles_.back().s1;
}

std::vector<int> Ribbon::support() const {
    std::vector<int> out;
    out.reserve(triangles_.size());
    for (const auto& t : triangles_) out.push_back(t.edge);
    std::sort(out.begin(), out.end());
    return out;
}

Ribbon Ribbon::prefix(int n) const {
    return Ribbon(std::vector<Triangle>(triangles_.begin(), triangles_.begin() + n));
}

Ribbon Ribbon::suffix(int n) const {
    return Ribbon(std::vector<Triangle>(triangles_.begin() + n, triangles_.end()));
}

std::array<int, 2> Ribbon::lift(const Patch& p) const {
    std::array<int, 2> total{0, 0};
    for (const auto& t : triangles_) {
        auto d = triangle_lift(p, t);
        total[0] += d[0];
        total[1] += d[1];
    }
    return total;
}

Ribbon concat(const Patch& p, const Ribbon& r1, const Ribbon& r2) {
    if (r1.empty()) return r2;
    if (r2.empty()) return r1;
    if (!(r1.end() == r2.start()))
        throw EndpointMismatch("concat requires end(r1) == start(r2)");
    std::vector<Triangle> all = r1.triangles();
    auto sup1 = r1.support();
    for (const auto& t : r2.triangles()) {
        if (std::binary_search(sup1.begin(), sup1.end(), t.edge))
            throw EdgeReuse("edge " + std::to_string(t.edge) + " appears in both ribbons");
        all.push_back(t);
    }
    return Ribbon::validated(p, std::move(all));
}

Ribbon reverse(const Ribbon& r) {
    std::vector<Triangle> out;
    out.reserve(r.length());
    for (int k = r.length() - 1; k >= 0; --k) out.push_back(opposite(r.at(k)));
    return Ribbon(std::move(out));
}

Orientation orientation(const Patch& p, const Ribbon& r) {
    if (r.empty()) throw EmptyRibbon("empty ribbon has no orientation");
    bool pos = true, neg = true;
    for (const auto& t : r.triangles()) {
        if (triangle_sign(p, t) > 0)
            neg = false;
        else
            pos = false;
    }
    if (pos) return Orientation::positive;
    if (neg) return Orientation::negative;
    return Orientation::mixed;
}

std::vector<Triangle> triangles_from(const Patch& p, const Site& s, bool positive_only) {
    std::vector<Triangle> out;
    const Patch::FaceRec& f = p.face(s.face);
    for (int k = 0; k < 3; ++k) {
        const int va = f.verts[k], vb = f.verts[(k + 1) % 3];
        if (va == s.vertex || vb == s.vertex) {
            const int other = va == s.vertex ? vb : va;
            out.push_back(Triangle{TriangleKind::direct, s, Site{other, s.face}, f.edges[k]});
        }
    }
    // Dual continuations: the two spokes of v bordering f.
    const auto& fan = p.faces_around(s.vertex);
    const auto& spokes = p.spokes(s.vertex);
    for (int k = 0; k < 6; ++k) {
        if (fan[k] != s.face) continue;
        const int e_next = spokes[k], f_next = fan[(k + 1) % 6];
        if (e_next >= 0 && f_next >= 0)
            out.push_back(Triangle{TriangleKind::dual, s, Site{s.vertex, f_next}, e_next});
        const int e_prev = spokes[(k + 5) % 6], f_prev = fan[(k + 5) % 6];
        if (e_prev >= 0 && f_prev >= 0)
            out.push_back(Triangle{TriangleKind::dual, s, Site{s.vertex, f_prev}, e_prev});
        break;
    }
    if (positive_only)
        std::erase_if(out, [&](const Triangle& t) { return triangle_sign(p, t) < 0; });
    return out;
}

std::vector<Triangle> triangles_into(const Patch& p, const Site& s, bool positive_only) {
    std::vector<Triangle> out;
    for (const Triangle& t : triangles_from(p, s, false)) {
        Triangle rev = opposite(t);
        if (!positive_only || triangle_sign(p, rev) > 0) out.push_back(rev);
    }
    return out;
}

Ribbon closed_direct_ribbon(const Patch& p, const Site& s) {
    if (s.face < 0 || s.vertex < 0 || !p.vertex_on_face(s.vertex, s.face))
        throw Error("invalid site for closed direct ribbon");
    const Patch::FaceRec& f = p.face(s.face);
    int k0 = 0;
    while (f.verts[k0] != s.vertex) ++k0;
    std::vector<Triangle> tris;
    for (int t = 0; t < 3; ++t) {
        const int k = (k0 + t) % 3;
        tris.push_back(Triangle{TriangleKind::direct, Site{f.verts[k], s.face},
                                Site{f.verts[(k + 1) % 3], s.face}, f.edges[k]});
    }
    return Ribbon::validated(p, std::move(tris));
}

Ribbon closed_dual_ribbon(const Patch& p, const Site& s) {
    if (!p.vertex_interior(s.vertex))
        throw BoundaryTouched("closed dual ribbon requires an interior vertex");
    const auto& fan = p.faces_around(s.vertex);
    const auto& spokes = p.spokes(s.vertex);
    int k0 = 0;
    while (k0 < 6 && fan[k0] != s.face) ++k0;
    if (k0 == 6) throw Error("site face is not around its vertex");
    // Counterclockwise through the fan. In this direction all six triangle
    // operators land in the L^h / R^h cases, so the gauge transformations
    // A_s^h compose as a left action (a homomorphism in h).
    std::vector<Triangle> tris;
    for (int t = 0; t < 6; ++t) {
        const int k = (k0 + t) % 6;
        tris.push_back(Triangle{TriangleKind::dual, Site{s.vertex, fan[k]},
                                Site{s.vertex, fan[(k + 1) % 6]}, spokes[k]});
    }
    return Ribbon::validated(p, std::move(tris));
}

Ribbon random_ribbon(const Patch& p, const Site& s0, int length, std::uint64_t seed,
                     RibbonWalkOptions opts) {
    if (length == 0) return Ribbon();
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < opts.retries; ++attempt) {
        std::vector<Triangle> tris;
        std::vector<int> used = opts.forbidden_edges;
        Site cur = s0;
        bool dead = false;
        while (static_cast<int>(tris.size()) < length) {
            std::vector<Triangle> cand = triangles_from(p, cur, opts.positive_only);
            std::erase_if(cand, [&](const Triangle& t) {
                return std::find(used.begin(), used.end(), t.edge) != used.end();
            });
            if (cand.empty()) {
                dead = true;
                break;
            }
            std::uniform_int_distribution<size_t> pick(0, cand.size() - 1);
            const Triangle& t = cand[pick(rng)];
            used.push_back(t.edge);
            tris.push_back(t);
            cur = t.s1;
        }
        if (dead) continue;
        if (opts.require_distinct_endpoints &&
            (cur.vertex == s0.vertex || cur.face == s0.face))
            continue;
        return Ribbon(std::move(tris));
    }
    throw Stuck("no valid ribbon of length " + std::to_string(length) + " found from site (v" +
                std::to_string(s0.vertex) + ",f" + std::to_string(s0.face) + ")");
}

Site random_site(const Patch& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> interior;
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.vertex_interior(v)) interior.push_back(v);
    if (interior.empty()) throw BoundaryTouched("patch has no interior vertices");
    std::uniform_int_distribution<size_t> pv(0, interior.size() - 1);
    const int v = interior[pv(rng)];
    std::uniform_int_distribution<int> pf(0, 5);
    return Site{v, p.faces_around(v)[pf(rng)]};
}

BridgePair bridge_pair(const Patch& p, std::uint64_t seed, int arm_len, int bridge_len) {
    const int total = 2 * arm_len + bridge_len;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Site s0 = random_site(p, rng());
        RibbonWalkOptions opts;
        opts.require_distinct_endpoints = true;
        Ribbon sigma;
        try {
            sigma = random_ribbon(p, s0, total, rng(), opts);
        } catch (const Stuck&) {
            continue;
        }
        BridgePair out;
        out.r1 = sigma.prefix(arm_len);
        out.bridge = sigma.suffix(arm_len).prefix(bridge_len);
        out.r2 = reverse(sigma.suffix(arm_len + bridge_len));
        return out;
    }
    throw Stuck("bridge_pair generation exhausted its retries");
}

}  // namespace qdm
