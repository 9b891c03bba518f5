#include <doctest.h>

#include <set>

#include "qdm/lattice.hpp"

using namespace qdm;

TEST_CASE("patch counts") {
    SUBCASE("2x2 torus: 4 vertices, 12 edges, 8 faces") {
        auto p = Patch::make(2, 2, Boundary::torus);
        CHECK(p->vertex_count() == 4);
        CHECK(p->edge_count() == 12);
        CHECK(p->face_count() == 8);
        CHECK(p->vertex_count() - p->edge_count() + p->face_count() == 0);
    }
    SUBCASE("open 3x3: Euler characteristic 1") {
        auto p = Patch::make(3, 3, Boundary::open);
        CHECK(p->vertex_count() == 9);
        CHECK(p->edge_count() == 16);
        CHECK(p->face_count() == 8);
        CHECK(p->vertex_count() - p->edge_count() + p->face_count() == 1);
    }
    SUBCASE("too small") {
        CHECK_THROWS_AS(Patch::make(1, 5, Boundary::torus), TooSmall);
        CHECK_THROWS_AS(Patch::make(5, 1, Boundary::open), TooSmall);
    }
}

TEST_CASE("torus incidence structure") {
    auto p = Patch::make(3, 3, Boundary::torus);
    SUBCASE("every edge borders two distinct faces; e -> e* is a bijection") {
        std::set<std::pair<int, int>> dual_edges;
        for (int e = 0; e < p->edge_count(); ++e) {
            const auto& er = p->edge(e);
            CHECK(er.left_face >= 0);
            CHECK(er.right_face >= 0);
            CHECK(er.left_face != er.right_face);
            dual_edges.insert({er.right_face, er.left_face});
        }
        CHECK(static_cast<int>(dual_edges.size()) == p->edge_count());
    }
    SUBCASE("every vertex has six distinct spokes and six distinct fan faces") {
        for (int v = 0; v < p->vertex_count(); ++v) {
            CHECK(p->vertex_interior(v));
            std::set<int> sp(p->spokes(v).begin(), p->spokes(v).end());
            std::set<int> fa(p->faces_around(v).begin(), p->faces_around(v).end());
            CHECK(sp.size() == 6);
            CHECK(fa.size() == 6);
        }
    }
    SUBCASE("spoke k separates fan faces k and k+1") {
        for (int v = 0; v < p->vertex_count(); ++v) {
            const auto& fan = p->faces_around(v);
            const auto& sp = p->spokes(v);
            for (int k = 0; k < 6; ++k) {
                const auto& er = p->edge(sp[k]);
                std::set<int> expect{fan[k], fan[(k + 1) % 6]};
                std::set<int> got{er.left_face, er.right_face};
                CHECK(expect == got);
                CHECK((er.v0 == v || er.v1 == v));
            }
        }
    }
    SUBCASE("faces contain their fan vertex") {
        for (int v = 0; v < p->vertex_count(); ++v)
            for (int f : p->faces_around(v)) CHECK(p->vertex_on_face(v, f));
    }
}

TEST_CASE("closed ribbons") {
    auto p = Patch::make(4, 4, Boundary::torus);
    const Site s{p->vertex_at(1, 1), p->face_at(Patch::U, 1, 1)};
    SUBCASE("triangle loop has length 3 with end sites s") {
        Ribbon r = closed_direct_ribbon(*p, s);
        CHECK(r.length() == 3);
        CHECK(r.start() == s);
        CHECK(r.end() == s);
        CHECK(orientation(*p, r) == Orientation::negative);  // ccw walk keeps the face left
    }
    SUBCASE("star loop has length 6 with end sites s") {
        Ribbon r = closed_dual_ribbon(*p, s);
        CHECK(r.length() == 6);
        CHECK(r.start() == s);
        CHECK(r.end() == s);
        CHECK(orientation(*p, r) == Orientation::positive);  // ccw keeps the vertex left
    }
    SUBCASE("open patch boundary is rejected") {
        auto q = Patch::make(3, 3, Boundary::open);
        const Site corner{q->vertex_at(0, 0), q->face_at(Patch::U, 0, 0)};
        CHECK_THROWS_AS(closed_dual_ribbon(*q, corner), BoundaryTouched);
    }
}

TEST_CASE("site exits") {
    auto p = Patch::make(4, 4, Boundary::torus);
    for (int v = 0; v < p->vertex_count(); ++v)
        for (int f : p->faces_around(v)) {
            const Site s{v, f};
            auto all = triangles_from(*p, s);
            CHECK(all.size() == 4);  // two direct, two dual
            int direct = 0, dual = 0;
            for (const auto& t : all) {
                validate_triangle(*p, t);
                CHECK(t.s0 == s);
                (t.kind == TriangleKind::direct ? direct : dual)++;
            }
            CHECK(direct == 2);
            CHECK(dual == 2);
            // Exactly one positive exit of each kind, and they share the edge;
            // this junction structure is what braiding configurations rely on.
            auto pos = triangles_from(*p, s, true);
            REQUIRE(pos.size() == 2);
            CHECK(pos[0].kind != pos[1].kind);
            CHECK(pos[0].edge == pos[1].edge);
            auto in = triangles_into(*p, s, true);
            REQUIRE(in.size() == 2);
            CHECK(in[0].kind != in[1].kind);
            CHECK(in[0].edge == in[1].edge);
        }
}

TEST_CASE("concat and reverse") {
    auto p = Patch::make(5, 5, Boundary::torus);
    const Site s0 = random_site(*p, 11);
    Ribbon r = random_ribbon(*p, s0, 6, 12);
    SUBCASE("concat with the empty ribbon") {
        CHECK(concat(*p, r, Ribbon()) == r);
        CHECK(concat(*p, Ribbon(), r) == r);
    }
    SUBCASE("split and reassemble; associativity") {
        Ribbon a = r.prefix(2), b = r.suffix(2).prefix(2), c = r.suffix(4);
        CHECK(concat(*p, concat(*p, a, b), c) == r);
        CHECK(concat(*p, a, concat(*p, b, c)) == r);
        CHECK(concat(*p, a, b).start() == a.start());
        CHECK(concat(*p, a, b).end() == b.end());
    }
    SUBCASE("reverse is an involution and flips orientation") {
        CHECK(reverse(reverse(r)) == r);
        Ribbon pos = random_ribbon(*p, s0, 5, 13, {.positive_only = true});
        CHECK(orientation(*p, pos) == Orientation::positive);
        CHECK(orientation(*p, reverse(pos)) == Orientation::negative);
        CHECK(reverse(pos).support() == pos.support());
    }
    SUBCASE("mismatched concatenation is rejected") {
        Ribbon a = r.prefix(2), c = r.suffix(4);
        if (!(a.end() == c.start())) CHECK_THROWS_AS(concat(*p, a, c), EndpointMismatch);
        CHECK_THROWS_AS(concat(*p, r, r), Error);  // edge reuse at best
    }
    SUBCASE("orientation of a hand-mixed ribbon") {
        // A positive triangle followed by the reverse of a positive triangle.
        auto pos = triangles_from(*p, s0, true);
        Triangle t = pos[0].kind == TriangleKind::dual ? pos[0] : pos[1];
        auto back = triangles_into(*p, t.s1, false);
        for (const auto& nxt : back) {
            // find a negative continuation from t.s1
            Triangle cont = opposite(nxt);
            if (cont.edge != t.edge && triangle_sign(*p, cont) < 0 && cont.s0 == t.s1) {
                Ribbon mixed = Ribbon::validated(*p, {t, cont});
                CHECK(orientation(*p, mixed) == Orientation::mixed);
                break;
            }
        }
    }
    SUBCASE("empty ribbon has no orientation/start") {
        CHECK_THROWS_AS(orientation(*p, Ribbon()), EmptyRibbon);
        CHECK_THROWS_AS(Ribbon().start(), EmptyRibbon);
    }
}

TEST_CASE("random ribbons respect the invariants") {
    auto p = Patch::make(8, 8, Boundary::open);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Site s0 = random_site(*p, 100 + seed);
        Ribbon r = random_ribbon(*p, s0, 8, seed);
        CHECK(r.length() == 8);
        CHECK(Ribbon::validated(*p, r.triangles()) == r);
        CHECK(static_cast<int>(r.support().size()) == r.length());
        CHECK(r.start() == s0);
        Ribbon rr = reverse(r);
        CHECK(rr.support() == r.support());
        // lift of the reverse is the negative
        auto l = r.lift(*p), lr = rr.lift(*p);
        CHECK(l[0] == -lr[0]);
        CHECK(l[1] == -lr[1]);
    }
    SUBCASE("length zero gives the empty ribbon") {
        CHECK(random_ribbon(*p, random_site(*p, 5), 0, 1).empty());
    }
}

TEST_CASE("bridge pair composes into one valid ribbon") {
    auto p = Patch::make(8, 8, Boundary::open);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        BridgePair bp = bridge_pair(*p, seed);
        Ribbon sigma = concat(*p, concat(*p, bp.r1, bp.bridge), reverse(bp.r2));
        CHECK(sigma.length() == bp.r1.length() + bp.bridge.length() + bp.r2.length());
        CHECK(!(sigma.start().vertex == sigma.end().vertex));
        CHECK(!(sigma.start().face == sigma.end().face));
    }
}
