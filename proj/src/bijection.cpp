#include "mapmob/bijection.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace mapmob {

VertexLabeling label_distances(const PlanarMap& m, int origin) {
    if (origin < 0 || origin >= m.vertex_count()) throw BadMarker("origin out of range");
    const bool oriented = m.has_coloring();
    VertexLabeling dist(m.vertex_count(), -1);
    std::queue<int> q;
    dist[origin] = 0;
    q.push(origin);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int h : m.half_edges_at(v)) {
            // h runs v -> target; usable when unoriented, or when h is the
            // canonical orientation (black face on its right).
            if (oriented && m.face_color(m.face_right_of(h)) != FaceColor::Black) continue;
            int w = m.target_of(h);
            if (dist[w] == -1) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    for (int v = 0; v < m.vertex_count(); ++v)
        if (dist[v] == -1)
            throw InternalError("vertex unreachable along oriented edges; coloring is broken");
    return dist;
}

bool check_even_bipartite(const PlanarMap& m) {
    if (!m.is_even_bipartite()) return false;
    m.vertex_two_coloring();  // constructive witness; throws on failure
    return true;
}

void check_labeling_invariants(const PlanarMap& m, const VertexLabeling& labels,
                               MobileFlavor flavor, int p) {
    int zeros = 0;
    for (int l : labels) {
        if (l < 0) throw InternalError("negative distance label");
        if (l == 0) ++zeros;
    }
    if (zeros != 1) throw InternalError("origin must be the unique label-0 vertex");
    for (int h = 0; h < m.half_edge_count(); ++h) {
        if (m.has_coloring() && m.face_color(m.face_right_of(h)) != FaceColor::Black)
            continue;  // check each edge once, along its canonical orientation
        if (!m.has_coloring() && h % 2 != 0) continue;
        int a = labels[m.vertex_of(h)], b = labels[m.target_of(h)];
        bool ok = true;
        switch (flavor) {
            case MobileFlavor::Bipartite: ok = std::abs(b - a) == 1; break;
            case MobileFlavor::Eulerian: ok = b <= a + 1; break;
            case MobileFlavor::PConstellation: ok = (b - a == 1) || (a - b == p - 1); break;
            case MobileFlavor::Arbitrary: ok = std::abs(b - a) <= 1; break;
        }
        if (!ok) throw InternalError("labels violate the flavor's edge increment rule");
    }
}

namespace {

// --- forward constructions -------------------------------------------------

struct MobileBuilder {
    std::vector<MobileNode> nodes;
    std::vector<MobileEdge> edges;
    std::vector<std::vector<int>> rot;

    int add_node(MobileNode n) {
        nodes.push_back(n);
        rot.emplace_back();
        return static_cast<int>(nodes.size()) - 1;
    }
};

}  // namespace

Mobile map_to_mobile_bipartite(const PlanarMap& m, int origin) {
    if (!check_even_bipartite(m)) throw NotBipartite("some face has odd valence");
    VertexLabeling dist = label_distances(m.without_coloring(), origin);

    MobileBuilder b;
    std::vector<int> vnode(m.vertex_count(), -1), fnode(m.face_count(), -1);
    for (int v = 0; v < m.vertex_count(); ++v)
        if (v != origin) vnode[v] = b.add_node({NodeKind::Labeled, dist[v]});
    for (int f = 0; f < m.face_count(); ++f) fnode[f] = b.add_node({NodeKind::White, 0});

    // One mobile edge per downhill half-edge, attached in the corner the
    // half-edge opens and at the face on its right.
    std::vector<int> edge_at(m.half_edge_count(), -1);
    for (int h = 0; h < m.half_edge_count(); ++h) {
        if (dist[m.vertex_of(h)] != dist[m.target_of(h)] + 1) continue;
        edge_at[h] = static_cast<int>(b.edges.size());
        b.edges.push_back({vnode[m.vertex_of(h)], fnode[m.face_right_of(h)], EdgeKind::Plain,
                           0, 0, 0});
    }
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (v == origin) continue;
        for (int h : m.half_edges_at(v))
            if (edge_at[h] >= 0) b.rot[vnode[v]].push_back(edge_at[h]);
    }
    for (int f = 0; f < m.face_count(); ++f)
        for (int h : m.face_contour(f))
            if (edge_at[h] >= 0) b.rot[fnode[f]].push_back(edge_at[h]);

    Mobile t = Mobile::build(MobileFlavor::Bipartite, std::move(b.nodes), std::move(b.edges),
                             std::move(b.rot));
    if (t.edge_count() != m.edge_count() || t.node_count() - m.face_count() != m.vertex_count() - 1)
        throw InternalError("mobile counts disagree with V, E, F");
    return t;
}

Mobile map_to_mobile_eulerian(const PlanarMap& m, int origin) {
    if (!m.has_coloring()) throw NotEulerian("eulerian construction needs a face-bicolored map");
    VertexLabeling dist = label_distances(m, origin);

    MobileBuilder b;
    std::vector<int> vnode(m.vertex_count(), -1), fnode(m.face_count(), -1);
    for (int v = 0; v < m.vertex_count(); ++v)
        if (v != origin) vnode[v] = b.add_node({NodeKind::Labeled, dist[v]});
    for (int f = 0; f < m.face_count(); ++f)
        fnode[f] = b.add_node(
            {m.face_color(f) == FaceColor::Black ? NodeKind::Black : NodeKind::White, 0});

    // For each edge, read its canonical orientation (black on the right): a
    // rise by one yields a plain edge at the uphill end inside the white face;
    // anything else is a flagged edge crossing it, labels (tail, head).
    std::vector<int> edge_at(m.half_edge_count(), -1);  // per attachment position
    for (int h = 0; h < m.half_edge_count(); ++h) {
        if (m.face_color(m.face_right_of(h)) != FaceColor::Black) continue;
        int g = m.opposite(h);
        int tail = dist[m.vertex_of(h)], head = dist[m.target_of(h)];
        int e = static_cast<int>(b.edges.size());
        if (head == tail + 1) {
            b.edges.push_back({vnode[m.vertex_of(g)], fnode[m.face_right_of(g)],
                               EdgeKind::Plain, 0, 0, 0});
            edge_at[g] = e;
        } else if (head <= tail) {
            b.edges.push_back({fnode[m.face_right_of(h)], fnode[m.face_right_of(g)],
                               EdgeKind::Flagged, tail, head, 0});
            edge_at[h] = e;
            edge_at[g] = e;
        } else {
            throw InternalError("oriented labels rise by more than one");
        }
    }
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (v == origin) continue;
        for (int h : m.half_edges_at(v))
            if (edge_at[h] >= 0 && b.edges[edge_at[h]].kind == EdgeKind::Plain)
                b.rot[vnode[v]].push_back(edge_at[h]);
    }
    for (int f = 0; f < m.face_count(); ++f)
        for (int h : m.face_contour(f))
            if (edge_at[h] >= 0) b.rot[fnode[f]].push_back(edge_at[h]);

    Mobile t = Mobile::build(MobileFlavor::Eulerian, std::move(b.nodes), std::move(b.edges),
                             std::move(b.rot));
    if (t.edge_count() != m.edge_count() || t.node_count() - m.face_count() != m.vertex_count() - 1)
        throw InternalError("mobile counts disagree with V, E, F");
    return t;
}

namespace {

// --- inverse constructions: successor matching -----------------------------

struct Matching {
    std::vector<int> succ;                    // item -> target corner item, -1 = origin
    std::vector<std::vector<int>> incoming;   // per corner: sources, window order
    std::vector<int> origin_sources;          // contour order
};

// Corners labeled n wait for the next corner labeled n-1; flags labeled n wait
// for the next corner labeled n. Matching is LIFO along the contour.
Matching match_successors(const std::vector<ContourItem>& items) {
    const int M = static_cast<int>(items.size());
    Matching out;
    out.succ.assign(M, -2);
    out.incoming.assign(M, {});
    std::vector<int> stack;
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < M; ++i) {
            if (!items[i].is_flag) {
                while (!stack.empty()) {
                    const ContourItem& top = items[stack.back()];
                    int target = top.is_flag ? top.label : top.label - 1;
                    if (target != items[i].label) break;
                    out.succ[stack.back()] = i;
                    stack.pop_back();
                }
            }
            if (pass == 0) {
                // Corners labeled 1 and flags labeled 0 connect to the origin.
                int target = items[i].is_flag ? items[i].label : items[i].label - 1;
                if (target == 0) {
                    out.succ[i] = -1;
                    out.origin_sources.push_back(i);
                } else {
                    stack.push_back(i);
                }
            }
        }
        if (stack.empty()) break;
    }
    if (!stack.empty()) throw InternalError("successor matching left unmatched items");
    for (int i = 0; i < M; ++i) {
        if (out.succ[i] >= 0) out.incoming[out.succ[i]].push_back(i);
    }
    for (int c = 0; c < M; ++c) {
        auto& in = out.incoming[c];
        std::sort(in.begin(), in.end(), [&](int x, int y) {
            return (x - c + M) % M < (y - c + M) % M;
        });
    }
    return out;
}

std::pair<PlanarMap, int> single_edge_pointed_map() {
    PlanarMap m = PlanarMap::build({1, 0}, {0, 1});
    int origin = m.vertex_of(1);
    return {m.with_origin(origin), origin};
}

// Assembles the rotation system from successor arcs. Around a labeled vertex,
// each corner contributes the landing ends of its incoming arcs in reverse
// window order followed by its own outgoing end; blocks follow the corners in
// rotation order. The origin takes the landing ends of label-1 corners and
// label-0 flags in reverse contour order.
std::pair<PlanarMap, int> assemble_map(const Mobile& t, bool eulerian) {
    ContourWalk walk = t.contour();
    const auto& items = walk.items;
    const int M = static_cast<int>(items.size());
    Matching match = match_successors(items);
    if (match.origin_sources.empty())
        throw InternalError("no successor chain reaches the origin");

    std::vector<int> corner_item_at(t.half_edge_count(), -1);
    for (int i = 0; i < M; ++i)
        if (!items[i].is_flag) corner_item_at[items[i].half_edge] = i;

    std::vector<int> o_slot(M, -1), landing_slot(M, -1);
    std::vector<int> slot_vertex;  // mobile node id, or -1 for the origin
    std::vector<std::vector<int>> vertex_slots(t.node_count());
    std::vector<int> origin_slots;
    int next_slot = 0;
    auto emit = [&](std::vector<int>& list, int vertex) {
        list.push_back(next_slot);
        slot_vertex.push_back(vertex);
        return next_slot++;
    };

    auto emit_corner_block = [&](int i) {
        int v = items[i].node;
        const auto& in = match.incoming[i];
        for (auto it = in.rbegin(); it != in.rend(); ++it)
            landing_slot[*it] = emit(vertex_slots[v], v);
        o_slot[i] = emit(vertex_slots[v], v);
    };
    std::reverse(match.origin_sources.begin(), match.origin_sources.end());
    for (int v = 0; v < t.node_count(); ++v) {
        if (t.node(v).kind != NodeKind::Labeled) continue;
        for (int h : t.half_edges_at(v)) emit_corner_block(corner_item_at[h]);
    }
    for (int x : match.origin_sources) landing_slot[x] = emit(origin_slots, -1);

    // Pair slots into map edges.
    std::vector<int> opp(next_slot, -1);
    std::vector<int> canonical;  // tail->head half-edges, for the coloring
    for (int i = 0; i < M; ++i) {
        if (items[i].is_flag) continue;
        opp[o_slot[i]] = landing_slot[i];
        opp[landing_slot[i]] = o_slot[i];
        canonical.push_back(landing_slot[i]);
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        if (t.edge(e).kind == EdgeKind::Plain) continue;
        int tail_item = -1, head_item = -1;
        for (int i = 0; i < M; ++i) {
            if (!items[i].is_flag || items[i].half_edge / 2 != e) continue;
            // The side leaving the black vertex carries the tail flag.
            if (t.node(t.src(items[i].half_edge)).kind == NodeKind::Black)
                tail_item = i;
            else
                head_item = i;
        }
        if (tail_item < 0 || head_item < 0) throw InternalError("flagged edge lost a side");
        opp[landing_slot[tail_item]] = landing_slot[head_item];
        opp[landing_slot[head_item]] = landing_slot[tail_item];
        canonical.push_back(landing_slot[tail_item]);
    }

    std::vector<int> nxt(next_slot, -1);
    auto link = [&](const std::vector<int>& slots) {
        for (size_t i = 0; i < slots.size(); ++i) nxt[slots[i]] = slots[(i + 1) % slots.size()];
    };
    for (const auto& slots : vertex_slots)
        if (!slots.empty()) link(slots);
    link(origin_slots);

    PlanarMap m = PlanarMap::build(opp, nxt);
    int origin = m.vertex_of(origin_slots[0]);
    if (!eulerian) return {m.with_origin(origin), origin};

    std::vector<FaceColor> colors(m.face_count(), FaceColor::White);
    std::vector<char> set(m.face_count(), 0);
    for (int h : canonical) {
        int f = m.face_right_of(h);
        if (set[f] && colors[f] != FaceColor::Black)
            throw InternalError("inconsistent face colors in the rebuilt map");
        colors[f] = FaceColor::Black;
        set[f] = 1;
    }
    for (int h : canonical) {
        int f = m.face_right_of(m.opposite(h));
        if (colors[f] == FaceColor::Black)
            throw InternalError("inconsistent face colors in the rebuilt map");
    }
    std::vector<int> opp2 = opp, nxt2 = nxt;
    PlanarMap colored = PlanarMap::build(std::move(opp2), std::move(nxt2), std::move(colors),
                                         origin);
    return {colored, origin};
}

}  // namespace

std::pair<PlanarMap, int> mobile_to_map_bipartite(const Mobile& t) {
    if (t.flavor() != MobileFlavor::Bipartite)
        throw NotWellLabeled("expected a bipartite mobile");
    ValidityReport r = t.validate();
    if (!r.ok) throw NotWellLabeled(r.message);
    if (!t.check_well_labeled()) throw NotWellLabeled("labels violate positivity / min-1 rule");
    if (t.edge_count() == 0) return single_edge_pointed_map();
    auto [m, origin] = assemble_map(t, false);
    if (m.edge_count() != static_cast<int>(t.contour().items.size()))
        throw InternalError("edge count differs from the mobile corner count");
    return {m, origin};
}

std::pair<PlanarMap, int> mobile_to_map_eulerian(const Mobile& t) {
    if (t.flavor() != MobileFlavor::Eulerian)
        throw NotWellLabeled("expected an eulerian mobile");
    ValidityReport r = t.validate();
    if (!r.ok) throw NotWellLabeled(r.message);
    if (!t.check_well_labeled())
        throw NotWellLabeled("labels violate positivity / zero-flag rule");
    auto [m, origin] = assemble_map(t, true);
    if (m.edge_count() != t.edge_count())
        throw InternalError("edge count differs between map and mobile");
    return {m, origin};
}

Mobile map_to_mobile(const PlanarMap& m, int origin, MobileFlavor flavor) {
    switch (flavor) {
        case MobileFlavor::Bipartite: return map_to_mobile_bipartite(m, origin);
        case MobileFlavor::Eulerian: return map_to_mobile_eulerian(m, origin);
        case MobileFlavor::PConstellation: {
            if (!m.has_coloring()) throw NotEulerian("constellations are face-bicolored maps");
            int p = 0;
            for (const auto& f : m.faces()) {
                if (f.color == FaceColor::Black) {
                    if (p == 0)
                        p = f.valence;
                    else if (p != f.valence)
                        throw NotInSubclass("black faces have unequal valences");
                }
            }
            if (p < 2) throw NotInSubclass("no p-valent black faces found");
            return map_to_mobile_eulerian(m, origin).simplify(MobileFlavor::PConstellation, p);
        }
        case MobileFlavor::Arbitrary: {
            PlanarMap inflated = m.without_coloring().with_origin(origin).inflate_edges();
            return map_to_mobile_eulerian(inflated, *inflated.origin())
                .simplify(MobileFlavor::Arbitrary);
        }
    }
    throw InternalError("bad flavor");
}

std::pair<PlanarMap, int> mobile_to_map(const Mobile& t) {
    switch (t.flavor()) {
        case MobileFlavor::Bipartite: return mobile_to_map_bipartite(t);
        case MobileFlavor::Eulerian: return mobile_to_map_eulerian(t);
        case MobileFlavor::PConstellation: return mobile_to_map_eulerian(t.unsimplify());
        case MobileFlavor::Arbitrary: {
            if (t.edge_count() == 0) {
                if (t.node(0).kind != NodeKind::Labeled || t.node(0).label != 1)
                    throw NotWellLabeled("isolated vertex must be labeled 1");
                return single_edge_pointed_map();
            }
            auto [m, origin] = mobile_to_map_eulerian(t.unsimplify());
            PlanarMap deflated = m.deflate_edges();
            return {deflated, *deflated.origin()};
        }
    }
    throw InternalError("bad flavor");
}

DistanceProfile profile(const PlanarMap& m, int origin) {
    VertexLabeling dist = label_distances(m, origin);
    DistanceProfile out;
    for (int v = 0; v < m.vertex_count(); ++v) ++out.v[dist[v]];
    for (int h = 0; h < m.half_edge_count(); ++h) {
        if (h > m.opposite(h)) continue;  // one count per edge
        int a = dist[m.vertex_of(h)], b = dist[m.target_of(h)];
        ++out.e[{std::min(a, b), std::max(a, b)}];
    }
    return out;
}

}  // namespace mapmob
