#include "doctest.h"

#include <algorithm>
#include <random>

#include "mapmob/planar_map.hpp"

using namespace mapmob;

namespace {

PlanarMap single_edge() { return PlanarMap::build({1, 0}, {0, 1}); }

PlanarMap loop_map() { return PlanarMap::build({1, 0}, {1, 0}); }

PlanarMap path_map() {
    // u - v - w
    return map_from_rotations({{0, 1}, {1, 2}}, {{0}, {0, 1}, {1}});
}

// Random relabeling of half-edge ids; markings and colors carried over.
PlanarMap relabel(const PlanarMap& m, std::mt19937& rng) {
    int n = m.half_edge_count();
    std::vector<int> pi(n);
    for (int i = 0; i < n; ++i) pi[i] = i;
    std::shuffle(pi.begin(), pi.end(), rng);
    std::vector<int> opp(n), nxt(n);
    for (int h = 0; h < n; ++h) {
        opp[pi[h]] = pi[m.opposite(h)];
        nxt[pi[h]] = pi[m.next_cw(h)];
    }
    PlanarMap raw = PlanarMap::build(opp, nxt);
    std::optional<std::vector<FaceColor>> colors;
    if (m.has_coloring()) {
        std::vector<FaceColor> c(raw.face_count(), FaceColor::White);
        for (int h = 0; h < n; ++h) c[raw.face_right_of(pi[h])] = m.face_color(m.face_right_of(h));
        colors = std::move(c);
    }
    std::optional<int> origin, root;
    if (m.origin()) origin = raw.vertex_of(pi[m.half_edges_at(*m.origin())[0]]);
    if (m.root()) root = pi[*m.root()];
    return PlanarMap::build(std::move(opp), std::move(nxt), std::move(colors), origin, root);
}

}  // namespace

TEST_CASE("smallest maps validate with the right counts") {
    PlanarMap e = single_edge();
    CHECK(e.vertex_count() == 2);
    CHECK(e.edge_count() == 1);
    CHECK(e.face_count() == 1);

    PlanarMap l = loop_map();
    CHECK(l.vertex_count() == 1);
    CHECK(l.edge_count() == 1);
    CHECK(l.face_count() == 2);
    auto faces = l.faces();
    CHECK(faces[0].valence == 1);
    CHECK(faces[1].valence == 1);
}

TEST_CASE("torus rotation system is rejected") {
    // one vertex, two interleaved loops
    CHECK_THROWS_AS(PlanarMap::build({1, 0, 3, 2}, {2, 3, 1, 0}), NonPlanar);
}

TEST_CASE("malformed arrays are rejected") {
    CHECK_THROWS_AS(PlanarMap::build({0, 1}, {0, 1}), NotInvolution);  // fixed points
    CHECK_THROWS_AS(PlanarMap::build({1, 0, 2, 3}, {0, 1, 2, 3}), NotInvolution);
    // two disjoint edges
    CHECK_THROWS_AS(PlanarMap::build({1, 0, 3, 2}, {0, 1, 2, 3}), NotConnected);
    CHECK_THROWS_AS(single_edge().with_origin(5), BadMarker);
    CHECK_THROWS_AS(single_edge().with_root(-1), BadMarker);
}

TEST_CASE("coloring must alternate across edges") {
    // single edge: its unique face touches both sides of the edge
    CHECK_THROWS_AS(
        PlanarMap::build({1, 0}, {0, 1}, std::vector<FaceColor>{FaceColor::Black}),
        BadColoring);
    // loop: two faces, opposite colors fine
    PlanarMap l = PlanarMap::build({1, 0}, {1, 0},
                                   std::vector<FaceColor>{FaceColor::Black, FaceColor::White});
    CHECK(l.has_coloring());
    CHECK_THROWS_AS(PlanarMap::build({1, 0}, {1, 0},
                                     std::vector<FaceColor>{FaceColor::Black, FaceColor::Black}),
                    BadColoring);
}

TEST_CASE("faces of the path: one 4-valent face visiting u,v,w,v") {
    PlanarMap p = path_map();
    CHECK(p.face_count() == 1);
    auto faces = p.faces();
    CHECK(faces[0].valence == 4);
    // contour source vertices, as a multiset of degrees: u(1), v(2), w(1), v(2)
    std::vector<int> degs;
    for (int h : faces[0].contour) degs.push_back(p.degree(p.vertex_of(h)));
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{1, 1, 2, 2});
    int sum = 0;
    for (const auto& f : p.faces()) sum += f.valence;
    CHECK(sum == 2 * p.edge_count());
}

TEST_CASE("even-face test matches bipartiteness") {
    CHECK(single_edge().is_even_bipartite());
    CHECK(path_map().is_even_bipartite());
    CHECK_FALSE(loop_map().is_even_bipartite());
    CHECK_NOTHROW(path_map().vertex_two_coloring());
}

TEST_CASE("inflation doubles edges and colors properly") {
    for (const PlanarMap& m : {single_edge(), loop_map(), path_map()}) {
        PlanarMap inf = m.with_origin(0).inflate_edges();
        CHECK(inf.edge_count() == 2 * m.edge_count());
        CHECK(inf.face_count() == m.face_count() + m.edge_count());
        CHECK(inf.vertex_count() == m.vertex_count());
        CHECK(inf.has_coloring());
        CHECK(inf.origin().has_value());
        int blacks = 0;
        for (const auto& f : inf.faces())
            if (f.color == FaceColor::Black) {
                ++blacks;
                CHECK(f.valence == 2);
            }
        CHECK(blacks == m.edge_count());
        // round trip through deflation
        PlanarMap back = inf.deflate_edges();
        CHECK(back.canonical_code() == m.with_origin(0).canonical_code());
    }
}

TEST_CASE("canonical code respects markings and ignores labels") {
    PlanarMap p = path_map();
    // endpoints are exchanged by the flip, the middle vertex is not
    int u = p.vertex_of(0);        // degree-1 endpoint
    int v = p.vertex_of(1);        // middle
    int w = -1;
    for (int x = 0; x < 3; ++x)
        if (x != u && x != v && p.degree(x) == 1) w = x;
    REQUIRE(w >= 0);
    CHECK(p.with_origin(u).canonical_code() == p.with_origin(w).canonical_code());
    CHECK(p.with_origin(u).canonical_code() != p.with_origin(v).canonical_code());
}

TEST_CASE("canonical code is stable under 100 random relabelings") {
    std::mt19937 rng(12345);
    PlanarMap base = path_map().with_origin(1);
    CanonicalCode want = base.canonical_code();
    for (int i = 0; i < 100; ++i) {
        PlanarMap r = relabel(base, rng);
        CHECK(r.canonical_code() == want);
    }
    // also with a coloring and root, on the loop
    PlanarMap l = PlanarMap::build({1, 0}, {1, 0},
                                   std::vector<FaceColor>{FaceColor::Black, FaceColor::White},
                                   0, 0);
    CanonicalCode lw = l.canonical_code();
    for (int i = 0; i < 100; ++i) CHECK(relabel(l, rng).canonical_code() == lw);
}

TEST_CASE("map json round-trips") {
    PlanarMap l = PlanarMap::build({1, 0}, {1, 0},
                                   std::vector<FaceColor>{FaceColor::Black, FaceColor::White},
                                   0, 1);
    std::string j = map_to_json(l);
    PlanarMap back = map_from_json(j);
    CHECK(back == l);
    CHECK(map_to_json(back) == j);
}
