#include "mapmob/mobile.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace mapmob {

std::string flavor_name(MobileFlavor f) {
    switch (f) {
        case MobileFlavor::Bipartite: return "bipartite";
        case MobileFlavor::Eulerian: return "eulerian";
        case MobileFlavor::PConstellation: return "p-constellation";
        case MobileFlavor::Arbitrary: return "arbitrary";
    }
    throw InternalError("bad flavor");
}

MobileFlavor flavor_from_name(const std::string& s) {
    if (s == "bipartite") return MobileFlavor::Bipartite;
    if (s == "eulerian") return MobileFlavor::Eulerian;
    if (s == "p-constellation" || s == "constellation") return MobileFlavor::PConstellation;
    if (s == "arbitrary") return MobileFlavor::Arbitrary;
    throw BadMarker("unknown flavor " + s);
}

Mobile Mobile::build(MobileFlavor flavor, std::vector<MobileNode> nodes,
                     std::vector<MobileEdge> edges, std::vector<std::vector<int>> rotations,
                     int p, std::optional<int> root) {
    const int V = static_cast<int>(nodes.size());
    const int E = static_cast<int>(edges.size());
    if (V == 0) throw MalformedTree("a mobile has at least one vertex");
    if (V != E + 1) throw MalformedTree("vertex count must exceed edge count by one");
    if (static_cast<int>(rotations.size()) != V) throw MalformedTree("one rotation per vertex");
    if (flavor == MobileFlavor::PConstellation && p < 2)
        throw MalformedTree("p-constellation mobiles need p >= 2");

    Mobile m;
    m.flavor_ = flavor;
    m.p_ = flavor == MobileFlavor::PConstellation ? p : 0;
    m.nodes_ = std::move(nodes);
    m.edges_ = std::move(edges);
    m.rotations_.assign(V, {});

    std::vector<int> uses(E, 0);
    for (int v = 0; v < V; ++v) {
        for (int e : rotations[v]) {
            if (e < 0 || e >= E) throw MalformedTree("rotation references a bad edge id");
            const MobileEdge& ed = m.edges_[e];
            if (ed.a == ed.b) throw MalformedTree("mobile edges join distinct vertices");
            int h;
            if (ed.a == v)
                h = 2 * e;
            else if (ed.b == v)
                h = 2 * e + 1;
            else
                throw MalformedTree("rotation lists a non-incident edge");
            m.rotations_[v].push_back(h);
            ++uses[e];
        }
    }
    for (int e = 0; e < E; ++e)
        if (uses[e] != 2) throw MalformedTree("each edge must appear once at each endpoint");

    m.next_cw_.assign(2 * E, -1);
    m.prev_cw_.assign(2 * E, -1);
    for (int v = 0; v < V; ++v) {
        const auto& r = m.rotations_[v];
        for (size_t i = 0; i < r.size(); ++i) {
            m.next_cw_[r[i]] = r[(i + 1) % r.size()];
            m.prev_cw_[r[(i + 1) % r.size()]] = r[i];
        }
    }

    // Connectivity; with V == E + 1 this also rules out cycles.
    {
        std::vector<char> seen(V, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int h : m.rotations_[v]) {
                int w = m.dst(h);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        if (cnt != V) throw MalformedTree("mobile is not connected");
    }

    if (root) {
        int n_items = static_cast<int>(m.contour().items.size());
        if (*root < 0 || *root >= n_items) throw MalformedTree("root contour index out of range");
        m.root_ = root;
    }
    return m;
}

int Mobile::flag_on(int h) const {
    const MobileEdge& e = edges_[h / 2];
    if (e.kind == EdgeKind::SingleFlag) return e.flag;
    if (e.kind != EdgeKind::Flagged) throw InternalError("flag_on over a plain edge");
    return nodes_[src(h)].kind == NodeKind::Black ? e.first_at_black : e.second_at_black;
}

Mobile Mobile::with_root(int contour_index) const {
    Mobile m = *this;
    int n_items = static_cast<int>(contour().items.size());
    if (contour_index < 0 || contour_index >= n_items)
        throw MalformedTree("root contour index out of range");
    m.root_ = contour_index;
    return m;
}

Mobile Mobile::without_root() const {
    Mobile m = *this;
    m.root_.reset();
    return m;
}

// Clockwise walk around the tree: traverse a half-edge, then turn into the
// next edge clockwise at its endpoint. Around every vertex the walk reads the
// incident items in rotation order, the direction the label rules use.
ContourWalk Mobile::contour() const {
    ContourWalk walk;
    if (edge_count() == 0) {
        if (nodes_[0].kind == NodeKind::Labeled)
            walk.items.push_back({false, nodes_[0].label, 0, -1});
        return walk;
    }
    walk.steps = half_edge_count();
    walk.items.reserve(half_edge_count());
    int h = 0;
    do {
        if (edges_[h / 2].kind != EdgeKind::Plain)
            walk.items.push_back({true, flag_on(h), src(h), h});
        int w = dst(h);
        if (nodes_[w].kind == NodeKind::Labeled)
            walk.items.push_back({false, nodes_[w].label, w, h ^ 1});
        h = next_cw_[h ^ 1];
    } while (h != 0);
    return walk;
}

namespace {

struct ItemView {
    bool is_flag;
    int enter, exit;
};

// The item presented to vertex v across half-edge h (h out of v).
ItemView item_at(const Mobile& m, int h) {
    const MobileEdge& e = m.edge(h / 2);
    switch (e.kind) {
        case EdgeKind::Plain:
            return {false, m.node(m.dst(h)).label, m.node(m.dst(h)).label};
        case EdgeKind::SingleFlag:
            return {true, e.flag, e.flag};
        case EdgeKind::Flagged:
            if (m.node(m.src(h)).kind == NodeKind::Black)
                return {true, e.first_at_black, e.second_at_black};
            return {true, e.second_at_black, e.first_at_black};
    }
    throw InternalError("bad edge kind");
}

}  // namespace

ValidityReport Mobile::validate() const {
    auto malformed = [](const std::string& msg) {
        return ValidityReport{false, true, -1, msg};
    };

    const bool has_black = flavor_ == MobileFlavor::Eulerian;
    const bool has_single_flag = flavor_ == MobileFlavor::Arbitrary;
    for (int v = 0; v < node_count(); ++v) {
        if (nodes_[v].kind == NodeKind::Black && !has_black)
            return malformed("black vertices only occur in eulerian mobiles");
    }
    for (int e = 0; e < edge_count(); ++e) {
        const MobileEdge& ed = edges_[e];
        NodeKind ka = nodes_[ed.a].kind, kb = nodes_[ed.b].kind;
        switch (ed.kind) {
            case EdgeKind::Plain:
                if (!((ka == NodeKind::Labeled && kb == NodeKind::White) ||
                      (kb == NodeKind::Labeled && ka == NodeKind::White)))
                    return malformed("plain edges join a labeled vertex to a white one");
                break;
            case EdgeKind::Flagged:
                if (!has_black) return malformed("flagged edges only occur in eulerian mobiles");
                if (!((ka == NodeKind::Black && kb == NodeKind::White) ||
                      (kb == NodeKind::Black && ka == NodeKind::White)))
                    return malformed("flagged edges join a black vertex to a white one");
                break;
            case EdgeKind::SingleFlag:
                if (!has_single_flag)
                    return malformed("single-flag edges only occur in arbitrary mobiles");
                if (ka != NodeKind::White || kb != NodeKind::White)
                    return malformed("single-flag edges join two white vertices");
                break;
        }
    }

    // Label rules, reported at the first offense in contour order.
    const int p = p_;
    std::vector<char> edge_seen(edge_count(), 0);
    ContourWalk walk = contour();
    int h = edge_count() == 0 ? -1 : 0;
    for (int step = 0; step < walk.steps; ++step, h = next_cw_[h ^ 1]) {
        const MobileEdge& ed = edges_[h / 2];
        if (ed.kind == EdgeKind::Flagged && !edge_seen[h / 2]) {
            edge_seen[h / 2] = 1;
            if (ed.second_at_black > ed.first_at_black) {
                int black = nodes_[ed.a].kind == NodeKind::Black ? ed.a : ed.b;
                return {false, false, black,
                        "flag labels increase across an edge at a black vertex"};
            }
        }
        int v = src(h);
        if (nodes_[v].kind == NodeKind::Labeled) continue;
        ItemView x = item_at(*this, prev_cw_[h]);
        ItemView y = item_at(*this, h);
        bool ok = true;
        std::string clause;
        if (nodes_[v].kind == NodeKind::Black) {
            ok = y.enter >= x.exit;
            clause = "flag labels decrease between consecutive edges at a black vertex";
        } else {
            switch (flavor_) {
                case MobileFlavor::Bipartite:
                    ok = y.enter >= x.exit - 1;
                    clause = "label drops by more than one clockwise around a white vertex";
                    break;
                case MobileFlavor::Eulerian:
                    if (x.is_flag) {
                        ok = y.enter == x.exit;
                        clause = "label after a flag must repeat the flag";
                    } else {
                        ok = y.enter == x.exit - 1;
                        clause = "label after a labeled vertex must drop by exactly one";
                    }
                    break;
                case MobileFlavor::PConstellation: {
                    int rise = y.enter - x.exit + 1;
                    ok = rise == 0 || (rise > 0 && rise % (p - 1) == 0);
                    clause = "clockwise increment is neither -1 nor k(p-1)-1";
                    break;
                }
                case MobileFlavor::Arbitrary:
                    ok = y.enter >= (x.is_flag ? x.exit : x.exit - 1);
                    clause = x.is_flag ? "label after a flag is smaller than the flag"
                                       : "label drops by more than one after a labeled vertex";
                    break;
            }
        }
        if (!ok) return {false, false, v, clause};
    }
    return {};
}

bool Mobile::check_well_labeled() const {
    bool has_one = false, has_zero_flag = false, any_flag = false;
    for (const auto& n : nodes_) {
        if (n.kind != NodeKind::Labeled) continue;
        if (n.label < 1) return false;
        if (n.label == 1) has_one = true;
    }
    for (const auto& e : edges_) {
        if (e.kind == EdgeKind::Flagged) {
            any_flag = true;
            if (e.first_at_black < 0 || e.second_at_black < 0) return false;
            if (e.first_at_black == 0 || e.second_at_black == 0) has_zero_flag = true;
        } else if (e.kind == EdgeKind::SingleFlag) {
            any_flag = true;
            if (e.flag < 0) return false;
            if (e.flag == 0) has_zero_flag = true;
        }
    }
    switch (flavor_) {
        case MobileFlavor::Bipartite:
        case MobileFlavor::PConstellation: return has_one;
        case MobileFlavor::Eulerian: return has_zero_flag;
        case MobileFlavor::Arbitrary: return has_zero_flag || has_one;
    }
    (void)any_flag;
    throw InternalError("bad flavor");
}

namespace {

struct Rebuilder {
    std::vector<MobileNode> nodes;
    std::vector<MobileEdge> edges;
    std::vector<std::vector<int>> rot;

    int add_node(MobileNode n) {
        nodes.push_back(n);
        rot.emplace_back();
        return static_cast<int>(nodes.size()) - 1;
    }
    int add_edge(MobileEdge e) {
        edges.push_back(e);
        return static_cast<int>(edges.size()) - 1;
    }
};

}  // namespace

Mobile Mobile::simplify(MobileFlavor target, int p) const {
    if (flavor_ != MobileFlavor::Eulerian)
        throw NotInSubclass("simplify starts from an eulerian mobile");
    if (target == MobileFlavor::PConstellation) {
        if (p < 2) throw NotInSubclass("p-constellation target needs p >= 2");
        Rebuilder rb;
        std::vector<int> node_map(node_count(), -1);
        for (int v = 0; v < node_count(); ++v) {
            if (nodes_[v].kind == NodeKind::Black) {
                if (degree(v) != 1)
                    throw NotInSubclass("black vertex " + std::to_string(v) + " is not univalent");
                const MobileEdge& e = edges_[rotations_[v][0] / 2];
                if (e.first_at_black - e.second_at_black != p - 1)
                    throw NotInSubclass("black vertex " + std::to_string(v) +
                                        " has flag gap != p-1");
                continue;
            }
            node_map[v] = rb.add_node(nodes_[v]);
        }
        std::vector<int> edge_map(edge_count(), -1);
        for (int e = 0; e < edge_count(); ++e)
            if (edges_[e].kind == EdgeKind::Plain)
                edge_map[e] = rb.add_edge({node_map[edges_[e].a], node_map[edges_[e].b],
                                           EdgeKind::Plain, 0, 0, 0});
        for (int v = 0; v < node_count(); ++v) {
            if (node_map[v] < 0) continue;
            for (int h : rotations_[v])
                if (edge_map[h / 2] >= 0) rb.rot[node_map[v]].push_back(edge_map[h / 2]);
        }
        return build(target, std::move(rb.nodes), std::move(rb.edges), std::move(rb.rot), p);
    }
    if (target != MobileFlavor::Arbitrary)
        throw NotInSubclass("simplification targets are p-constellation or arbitrary");

    Rebuilder rb;
    std::vector<int> node_map(node_count(), -1);
    // fused[e] = single-flag edge replacing the flagged edge e, when its black
    // endpoint is bivalent.
    std::vector<int> fused(edge_count(), -1);
    for (int v = 0; v < node_count(); ++v)
        if (nodes_[v].kind != NodeKind::Black) node_map[v] = rb.add_node(nodes_[v]);
    std::vector<int> edge_map(edge_count(), -1);
    for (int e = 0; e < edge_count(); ++e)
        if (edges_[e].kind == EdgeKind::Plain)
            edge_map[e] =
                rb.add_edge({node_map[edges_[e].a], node_map[edges_[e].b], EdgeKind::Plain, 0, 0, 0});
    for (int v = 0; v < node_count(); ++v) {
        if (nodes_[v].kind != NodeKind::Black) continue;
        if (degree(v) == 1) {
            const MobileEdge& e = edges_[rotations_[v][0] / 2];
            if (e.first_at_black != e.second_at_black + 1)
                throw NotInSubclass("univalent black vertex " + std::to_string(v) +
                                    " is not (n+1, n)-flagged");
        } else if (degree(v) == 2) {
            int e1 = rotations_[v][0] / 2, e2 = rotations_[v][1] / 2;
            const MobileEdge &a = edges_[e1], &b = edges_[e2];
            if (a.first_at_black != a.second_at_black || b.first_at_black != b.second_at_black ||
                a.first_at_black != b.first_at_black)
                throw NotInSubclass("bivalent black vertex " + std::to_string(v) +
                                    " is not (n, n)-(n, n)-flagged");
            int w1 = dst(rotations_[v][0]), w2 = dst(rotations_[v][1]);
            int id = rb.add_edge(
                {node_map[w1], node_map[w2], EdgeKind::SingleFlag, 0, 0, a.first_at_black});
            fused[e1] = id;
            fused[e2] = id;
        } else {
            throw NotInSubclass("black vertex " + std::to_string(v) + " has degree > 2");
        }
    }
    for (int v = 0; v < node_count(); ++v) {
        if (node_map[v] < 0) continue;
        for (int h : rotations_[v]) {
            int e = h / 2;
            if (edge_map[e] >= 0)
                rb.rot[node_map[v]].push_back(edge_map[e]);
            else if (fused[e] >= 0)
                rb.rot[node_map[v]].push_back(fused[e]);
            // erased univalent blacks leave no trace
        }
    }
    return build(target, std::move(rb.nodes), std::move(rb.edges), std::move(rb.rot));
}

Mobile Mobile::unsimplify() const {
    if (flavor_ != MobileFlavor::PConstellation && flavor_ != MobileFlavor::Arbitrary)
        throw NotInSubclass("unsimplify starts from a p-constellation or arbitrary mobile");

    Rebuilder rb;
    for (int v = 0; v < node_count(); ++v) rb.add_node(nodes_[v]);
    std::vector<int> edge_map(edge_count(), -1);
    std::vector<std::pair<int, int>> split(edge_count(), {-1, -1});  // per endpoint a / b
    for (int e = 0; e < edge_count(); ++e) {
        const MobileEdge& ed = edges_[e];
        if (ed.kind == EdgeKind::Plain) {
            edge_map[e] = rb.add_edge(ed);
        } else {
            // single-flag -> bivalent black with two (n, n)-flagged edges
            int black = rb.add_node({NodeKind::Black, 0});
            int ea = rb.add_edge({black, ed.a, EdgeKind::Flagged, ed.flag, ed.flag, 0});
            int eb = rb.add_edge({black, ed.b, EdgeKind::Flagged, ed.flag, ed.flag, 0});
            rb.rot[black] = {ea, eb};
            split[e] = {ea, eb};
        }
    }
    auto resolved = [&](int e, int v) {
        if (edge_map[e] >= 0) return edge_map[e];
        return v == edges_[e].a ? split[e].first : split[e].second;
    };

    const int p = flavor_ == MobileFlavor::PConstellation ? p_ : 2;
    for (int v = 0; v < node_count(); ++v) {
        if (nodes_[v].kind != NodeKind::White) {
            if (nodes_[v].kind == NodeKind::Labeled)
                for (int h : rotations_[v]) rb.rot[v].push_back(resolved(h / 2, v));
            continue;
        }
        const auto& r = rotations_[v];
        for (size_t i = 0; i < r.size(); ++i) {
            rb.rot[v].push_back(resolved(r[i] / 2, v));
            ItemView x = item_at(*this, r[i]);
            ItemView y = item_at(*this, r[(i + 1) % r.size()]);
            int base = x.is_flag ? x.exit : x.exit - 1;
            int rise = y.enter - base;
            if (rise < 0 || rise % (p - 1) != 0)
                throw InternalError("white neighborhood violates the simplified label rule");
            for (int j = 1; j * (p - 1) <= rise; ++j) {
                int black = rb.add_node({NodeKind::Black, 0});
                int e = rb.add_edge({black, v, EdgeKind::Flagged, base + j * (p - 1),
                                     base + (j - 1) * (p - 1), 0});
                rb.rot[black] = {e};
                rb.rot[v].push_back(e);
            }
        }
    }
    return build(MobileFlavor::Eulerian, std::move(rb.nodes), std::move(rb.edges),
                 std::move(rb.rot));
}

Mobile Mobile::as_flavor(MobileFlavor target, int p) const {
    Mobile m = *this;
    m.flavor_ = target;
    m.p_ = target == MobileFlavor::PConstellation ? p : 0;
    m.root_.reset();
    ValidityReport r = m.validate();
    if (r.malformed) throw NotInSubclass(r.message);
    return m;
}

CanonicalCode Mobile::code_from_start(int start) const {
    const int n = half_edge_count();
    std::vector<int32_t> id(n, -1);
    std::vector<int> order;
    std::vector<int> vertex_order;
    auto discover = [&](int entry) {
        vertex_order.push_back(src(entry));
        int h = entry;
        do {
            id[h] = static_cast<int32_t>(order.size());
            order.push_back(h);
            h = next_cw_[h];
        } while (h != entry);
    };
    discover(start);
    for (size_t i = 0; i < order.size(); ++i)
        if (id[order[i] ^ 1] == -1) discover(order[i] ^ 1);

    CanonicalCode w;
    w.push_back(n);
    for (int v : vertex_order) {
        w.push_back(static_cast<int32_t>(nodes_[v].kind));
        w.push_back(nodes_[v].kind == NodeKind::Labeled ? nodes_[v].label : 0);
        w.push_back(degree(v));
    }
    for (int h : order) {
        w.push_back(id[h ^ 1]);
        const MobileEdge& e = edges_[h / 2];
        w.push_back(static_cast<int32_t>(e.kind));
        w.push_back(e.kind == EdgeKind::Plain ? 0 : flag_on(h));
    }
    return w;
}

CanonicalCode Mobile::canonical_code() const {
    CanonicalCode best;
    if (edge_count() == 0) {
        best = {root_ ? 1 : 0, -1, static_cast<int32_t>(nodes_[0].kind), nodes_[0].label};
        return best;
    }
    if (root_) {
        ContourWalk walk = contour();
        const ContourItem& item = walk.items[*root_];
        best = code_from_start(item.half_edge);
        best.insert(best.begin(), item.is_flag ? 2 : 1);
        return best;
    }
    for (int h = 0; h < half_edge_count(); ++h) {
        CanonicalCode w = code_from_start(h);
        if (best.empty() || w < best) best = std::move(w);
    }
    best.insert(best.begin(), 0);
    return best;
}

bool Mobile::operator==(const Mobile& o) const {
    return flavor_ == o.flavor_ && p_ == o.p_ && root_ == o.root_ &&
           canonical_code() == o.canonical_code();
}

namespace {

nlohmann::json edge_spec_json(const MobileEdge& e) {
    if (e.kind == EdgeKind::Plain) return "plain";
    if (e.kind == EdgeKind::Flagged)
        return nlohmann::json{{"flags", {e.first_at_black, e.second_at_black}}};
    return nlohmann::json{{"flag", e.flag}};
}

// Children listed clockwise from the parent edge; the top node (parent < 0)
// lists its full rotation in stored order.
nlohmann::json node_to_json(const Mobile& m, int v, int parent_half_edge) {
    nlohmann::json j;
    const MobileNode& n = m.node(v);
    j["kind"] = n.kind == NodeKind::Labeled ? "labeled"
               : n.kind == NodeKind::White  ? "white"
                                            : "black";
    if (n.kind == NodeKind::Labeled) j["label"] = n.label;
    nlohmann::json children = nlohmann::json::array();
    const auto& rot = m.half_edges_at(v);
    size_t start = 0;
    if (parent_half_edge >= 0)
        for (size_t i = 0; i < rot.size(); ++i)
            if (rot[i] == parent_half_edge) start = i;
    for (size_t k = 0; k < rot.size(); ++k) {
        int h = rot[(start + k) % rot.size()];
        if (h == parent_half_edge) continue;
        nlohmann::json c;
        c["edge"] = edge_spec_json(m.edge(h / 2));
        c["node"] = node_to_json(m, m.dst(h), h ^ 1);
        children.push_back(std::move(c));
    }
    j["children"] = std::move(children);
    return j;
}

struct JsonLoader {
    std::vector<MobileNode> nodes;
    std::vector<MobileEdge> edges;
    std::vector<std::vector<int>> rot;

    int load(const nlohmann::json& j, int parent, const nlohmann::json* edge_spec) {
        MobileNode n;
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "labeled") {
            n.kind = NodeKind::Labeled;
            n.label = j.at("label").get<int>();
        } else if (kind == "white") {
            n.kind = NodeKind::White;
        } else if (kind == "black") {
            n.kind = NodeKind::Black;
        } else {
            throw MalformedTree("bad node kind " + kind);
        }
        nodes.push_back(n);
        rot.emplace_back();
        int v = static_cast<int>(nodes.size()) - 1;
        if (parent >= 0) {
            MobileEdge e;
            e.a = parent;
            e.b = v;
            if (edge_spec->is_string() && edge_spec->get<std::string>() == "plain") {
                e.kind = EdgeKind::Plain;
            } else if (edge_spec->is_object() && edge_spec->contains("flags")) {
                e.kind = EdgeKind::Flagged;
                e.first_at_black = (*edge_spec)["flags"][0].get<int>();
                e.second_at_black = (*edge_spec)["flags"][1].get<int>();
            } else if (edge_spec->is_object() && edge_spec->contains("flag")) {
                e.kind = EdgeKind::SingleFlag;
                e.flag = (*edge_spec)["flag"].get<int>();
            } else {
                throw MalformedTree("bad edge spec in mobile json");
            }
            edges.push_back(e);
            int eid = static_cast<int>(edges.size()) - 1;
            rot[parent].push_back(eid);
            rot[v].push_back(eid);
        }
        if (j.contains("children"))
            for (const auto& c : j["children"]) load(c.at("node"), v, &c.at("edge"));
        return v;
    }
};

}  // namespace

std::string mobile_to_json(const Mobile& m) {
    nlohmann::json j;
    j["flavor"] = flavor_name(m.flavor());
    if (m.flavor() == MobileFlavor::PConstellation) j["p"] = m.constellation_p();
    if (m.root()) j["root"] = *m.root();
    j["tree"] = node_to_json(m, 0, -1);
    return j.dump(2) + "\n";
}

Mobile mobile_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MobileFlavor flavor = flavor_from_name(j.at("flavor").get<std::string>());
    int p = j.contains("p") ? j["p"].get<int>() : 0;
    std::optional<int> root;
    if (j.contains("root")) root = j["root"].get<int>();
    JsonLoader loader;
    loader.load(j.at("tree"), -1, nullptr);
    // Children were appended after the parent edge; rotate each non-top list
    // so the parent edge comes first, matching "clockwise from the parent".
    // Parent edge ids are the smallest at each node by construction, already
    // first in rot: nothing to do.
    return Mobile::build(flavor, std::move(loader.nodes), std::move(loader.edges),
                         std::move(loader.rot), p, root);
}

}  // namespace mapmob
