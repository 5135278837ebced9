#include "mapmob/planar_map.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <numeric>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace mapmob {

namespace {

bool is_permutation_array(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

// Orbit ids assigned by smallest contained element, ids dense from 0.
std::vector<int> orbit_ids(int n, const std::vector<int>& next, int* count,
                           std::vector<std::vector<int>>* members) {
    std::vector<int> id(n, -1);
    int c = 0;
    for (int h = 0; h < n; ++h) {
        if (id[h] != -1) continue;
        std::vector<int> orbit;
        int x = h;
        while (id[x] == -1) {
            id[x] = c;
            orbit.push_back(x);
            x = next[x];
        }
        if (x != h) throw InternalError("orbit walk escaped its cycle");
        if (members) members->push_back(std::move(orbit));
        ++c;
    }
    *count = c;
    return id;
}

}  // namespace

PlanarMap PlanarMap::build(std::vector<int> opposite, std::vector<int> next_cw,
                           std::optional<std::vector<FaceColor>> face_color,
                           std::optional<int> origin, std::optional<int> root) {
    const int n = static_cast<int>(opposite.size());
    if (n == 0 || n % 2 != 0 || static_cast<int>(next_cw.size()) != n)
        throw NotInvolution("need a nonempty even-size half-edge set with matching arrays");
    if (!is_permutation_array(opposite) || !is_permutation_array(next_cw))
        throw NotInvolution("opposite/next_cw must be permutations of 0..2E-1");
    for (int h = 0; h < n; ++h)
        if (opposite[opposite[h]] != h || opposite[h] == h)
            throw NotInvolution("opposite is not a fixed-point-free involution");

    PlanarMap m;
    m.opposite_ = std::move(opposite);
    m.next_cw_ = std::move(next_cw);
    m.prev_cw_.assign(n, 0);
    for (int h = 0; h < n; ++h) m.prev_cw_[m.next_cw_[h]] = h;
    m.compute_orbits();

    // Connectivity: one orbit under the group generated by opposite and next_cw.
    {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 0;
        while (!stack.empty()) {
            int h = stack.back();
            stack.pop_back();
            ++cnt;
            for (int g : {m.opposite_[h], m.next_cw_[h]}) {
                if (!seen[g]) {
                    seen[g] = 1;
                    stack.push_back(g);
                }
            }
        }
        if (cnt != n) throw NotConnected("map has more than one connected component");
    }

    const int euler = m.n_vertices_ - m.edge_count() + m.n_faces_;
    if (euler != 2) throw NonPlanar("V - E + F = " + std::to_string(euler));

    if (face_color) {
        if (static_cast<int>(face_color->size()) != m.n_faces_)
            throw BadColoring("expected one color per face");
        for (int h = 0; h < n; ++h)
            if ((*face_color)[m.he_face_[h]] == (*face_color)[m.he_face_[m.opposite_[h]]])
                throw BadColoring("faces on the two sides of an edge share a color");
        m.face_color_ = std::move(*face_color);
    }
    if (origin) {
        if (*origin < 0 || *origin >= m.n_vertices_) throw BadMarker("origin out of range");
        m.origin_ = origin;
    }
    if (root) {
        if (*root < 0 || *root >= n) throw BadMarker("root out of range");
        m.root_ = root;
    }
    return m;
}

void PlanarMap::compute_orbits() {
    const int n = half_edge_count();
    std::vector<std::vector<int>> vmembers, fmembers;
    he_vertex_ = orbit_ids(n, next_cw_, &n_vertices_, &vmembers);
    std::vector<int> face_next(n);
    for (int h = 0; h < n; ++h) face_next[h] = next_in_face(h);
    he_face_ = orbit_ids(n, face_next, &n_faces_, &fmembers);
    vertex_half_edges_ = std::move(vmembers);
    face_contours_ = std::move(fmembers);
}

PlanarMap PlanarMap::with_origin(int v) const {
    if (v < 0 || v >= n_vertices_) throw BadMarker("origin out of range");
    PlanarMap m = *this;
    m.origin_ = v;
    return m;
}

PlanarMap PlanarMap::with_root(int h) const {
    if (h < 0 || h >= half_edge_count()) throw BadMarker("root out of range");
    PlanarMap m = *this;
    m.root_ = h;
    return m;
}

PlanarMap PlanarMap::without_markers() const {
    PlanarMap m = *this;
    m.origin_.reset();
    m.root_.reset();
    return m;
}

PlanarMap PlanarMap::without_coloring() const {
    PlanarMap m = *this;
    m.face_color_.clear();
    return m;
}

std::vector<FaceInfo> PlanarMap::faces() const {
    std::vector<FaceInfo> out(n_faces_);
    for (int f = 0; f < n_faces_; ++f) {
        out[f].id = f;
        out[f].contour = face_contours_[f];
        out[f].valence = static_cast<int>(face_contours_[f].size());
        if (!face_color_.empty()) out[f].color = face_color_[f];
    }
    return out;
}

bool PlanarMap::is_even_bipartite() const {
    for (const auto& c : face_contours_)
        if (c.size() % 2 != 0) return false;
    return true;
}

std::vector<int> PlanarMap::vertex_two_coloring() const {
    std::vector<int> color(n_vertices_, -1);
    std::queue<int> q;
    color[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int h : vertex_half_edges_[v]) {
            int w = target_of(h);
            if (color[w] == -1) {
                color[w] = 1 - color[v];
                q.push(w);
            }
        }
    }
    for (int h = 0; h < half_edge_count(); ++h)
        if (color[vertex_of(h)] == color[target_of(h)])
            throw InternalError("even-faced sphere map failed vertex 2-coloring");
    return color;
}

PlanarMap PlanarMap::inflate_edges() const {
    if (has_coloring()) throw InternalError("inflate_edges expects an uncolored map");
    const int n = half_edge_count();
    // Original half-edge h splits into first(h)=2h and second(h)=2h+1, both at
    // the source of h, with first before second clockwise. Edges pair
    // first(h) with second(opposite(h)); the faces {first(h), first(h')} are
    // the new black 2-valent faces, the second-copies retrace original faces.
    std::vector<int> opp(2 * n), nxt(2 * n);
    for (int h = 0; h < n; ++h) {
        opp[2 * h] = 2 * opposite_[h] + 1;
        opp[2 * h + 1] = 2 * opposite_[h];
        nxt[2 * h] = 2 * h + 1;
        nxt[2 * h + 1] = 2 * next_cw_[h];
    }
    PlanarMap inflated = build(std::move(opp), std::move(nxt));
    std::vector<FaceColor> colors(inflated.n_faces_, FaceColor::White);
    for (int h = 0; h < n; ++h) colors[inflated.he_face_[2 * h]] = FaceColor::Black;
    for (int h = 0; h < n; ++h)
        if (colors[inflated.he_face_[2 * h + 1]] == FaceColor::Black)
            throw InternalError("inflation produced an inconsistent coloring");
    std::optional<int> new_origin, new_root;
    if (origin_) new_origin = inflated.he_vertex_[2 * vertex_half_edges_[*origin_][0]];
    if (root_) new_root = 2 * *root_;
    return build(inflated.opposite_, inflated.next_cw_, std::move(colors), new_origin, new_root);
}

PlanarMap PlanarMap::deflate_edges() const {
    if (!has_coloring()) throw BadColoring("deflate_edges needs a face-bicolored map");
    // Collect black 2-valent faces; each becomes one edge of the output.
    std::vector<int> black_faces;
    for (int f = 0; f < n_faces_; ++f) {
        if (face_color_[f] != FaceColor::Black) continue;
        if (face_contours_[f].size() != 2)
            throw NotInSubclass("black face " + std::to_string(f) + " is not 2-valent");
        black_faces.push_back(f);
    }
    const int n = half_edge_count();
    std::vector<int> new_id(n, -1);
    for (size_t b = 0; b < black_faces.size(); ++b) {
        const auto& c = face_contours_[black_faces[b]];
        new_id[c[0]] = static_cast<int>(2 * b);
        new_id[c[1]] = static_cast<int>(2 * b + 1);
    }
    std::vector<int> opp(2 * black_faces.size()), nxt(2 * black_faces.size());
    for (size_t b = 0; b < black_faces.size(); ++b) {
        opp[2 * b] = static_cast<int>(2 * b + 1);
        opp[2 * b + 1] = static_cast<int>(2 * b);
    }
    // Around each vertex the bigon's representative is immediately followed by
    // the absorbed white-side half-edge of its sibling.
    for (int h = 0; h < n; ++h) {
        if (new_id[h] < 0) continue;
        int absorbed = next_cw_[h];
        if (new_id[absorbed] >= 0 || face_color_[he_face_[opposite_[absorbed]]] != FaceColor::Black)
            throw NotInSubclass("rotation is not an edge inflation image");
        int g = next_cw_[absorbed];
        while (new_id[g] < 0) g = next_cw_[g];
        nxt[new_id[h]] = new_id[g];
    }
    std::optional<int> new_origin, new_root;
    PlanarMap out = build(std::move(opp), std::move(nxt));
    if (origin_) {
        for (int h : vertex_half_edges_[*origin_])
            if (new_id[h] >= 0) {
                new_origin = out.he_vertex_[new_id[h]];
                break;
            }
    }
    if (root_) {
        int r = *root_;
        while (new_id[r] < 0) r = prev_cw_[r];
        new_root = new_id[r];
    }
    return build(out.opposite_, out.next_cw_, std::nullopt, new_origin, new_root);
}

CanonicalCode PlanarMap::code_from_start(int start) const {
    const int n = half_edge_count();
    std::vector<int32_t> id(n, -1);
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> vertex_order;  // discovery order of vertices
    std::vector<int> vdisc(n_vertices_, -1);

    auto discover_vertex = [&](int entry) {
        int v = he_vertex_[entry];
        vdisc[v] = static_cast<int>(vertex_order.size());
        vertex_order.push_back(v);
        int h = entry;
        do {
            id[h] = static_cast<int32_t>(order.size());
            order.push_back(h);
            h = next_cw_[h];
        } while (h != entry);
    };

    discover_vertex(start);
    for (size_t i = 0; i < order.size(); ++i) {
        int o = opposite_[order[i]];
        if (id[o] == -1) discover_vertex(o);
    }

    CanonicalCode w;
    w.reserve(2 * n + n_vertices_ + 8);
    w.push_back(n);
    w.push_back(face_color_.empty() ? 0 : 1);
    w.push_back(origin_ ? vdisc[*origin_] : -1);
    for (int v : vertex_order) w.push_back(degree(v));
    for (int h : order) w.push_back(id[opposite_[h]]);
    if (!face_color_.empty())
        for (int h : order) w.push_back(face_color_[he_face_[h]] == FaceColor::Black ? 1 : 0);
    return w;
}

CanonicalCode PlanarMap::canonical_code() const {
    std::vector<int> starts;
    if (root_) {
        starts = {*root_};
    } else if (origin_) {
        starts = vertex_half_edges_[*origin_];
    } else {
        starts.resize(half_edge_count());
        std::iota(starts.begin(), starts.end(), 0);
    }
    CanonicalCode best;
    for (int s : starts) {
        CanonicalCode w = code_from_start(s);
        if (best.empty() || w < best) best = std::move(w);
    }
    best.insert(best.begin(), root_ ? 1 : 0);
    return best;
}

std::vector<int> PlanarMap::automorphism_orbits() const {
    std::vector<int> starts;
    if (root_) {
        starts = {*root_};
    } else if (origin_) {
        starts = vertex_half_edges_[*origin_];
    } else {
        starts.resize(half_edge_count());
        std::iota(starts.begin(), starts.end(), 0);
    }
    const int n = half_edge_count();
    CanonicalCode best;
    std::vector<std::vector<int32_t>> best_ids;
    for (int s : starts) {
        const int saved = static_cast<int>(best_ids.size());
        std::vector<int32_t> id(n, -1);
        std::vector<int> order;
        {
            // Same traversal as code_from_start, ids only.
            std::vector<int> vertex_order;
            auto discover = [&](int entry) {
                int h = entry;
                do {
                    id[h] = static_cast<int32_t>(order.size());
                    order.push_back(h);
                    h = next_cw_[h];
                } while (h != entry);
            };
            discover(s);
            for (size_t i = 0; i < order.size(); ++i)
                if (id[opposite_[order[i]]] == -1) discover(opposite_[order[i]]);
        }
        CanonicalCode w = code_from_start(s);
        if (best.empty() || w < best) {
            best = std::move(w);
            best_ids.clear();
            best_ids.push_back(std::move(id));
        } else if (w == best) {
            best_ids.push_back(std::move(id));
        }
        (void)saved;
    }
    // Union h with its image under each automorphism phi_s0^{-1} . phi_s.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const auto& ref = best_ids[0];
    std::vector<int> inv_ref(n);
    for (int h = 0; h < n; ++h) inv_ref[ref[h]] = h;
    for (const auto& ids : best_ids) {
        for (int h = 0; h < n; ++h) {
            int img = inv_ref[ids[h]];
            int a = find(h), b = find(img);
            if (a != b) parent[a] = b;
        }
    }
    std::vector<int> orbit(n);
    for (int h = 0; h < n; ++h) orbit[h] = find(h);
    return orbit;
}

bool PlanarMap::operator==(const PlanarMap& o) const {
    return opposite_ == o.opposite_ && next_cw_ == o.next_cw_ && face_color_ == o.face_color_ &&
           origin_ == o.origin_ && root_ == o.root_;
}

std::string code_digest(const CanonicalCode& code) {
    // FNV-1a over the int32 stream, printed as hex. Display only.
    uint64_t hash = 1469598103934665603ull;
    for (int32_t x : code) {
        for (int b = 0; b < 4; ++b) {
            hash ^= static_cast<uint8_t>(x >> (8 * b));
            hash *= 1099511628211ull;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << hash;
    return os.str();
}

PlanarMap map_from_rotations(const std::vector<std::pair<int, int>>& edges,
                             const std::vector<std::vector<int>>& rotations,
                             std::optional<std::vector<FaceColor>> face_color,
                             std::optional<int> origin) {
    const int E = static_cast<int>(edges.size());
    std::vector<int> opp(2 * E), nxt(2 * E, -1);
    for (int e = 0; e < E; ++e) {
        opp[2 * e] = 2 * e + 1;
        opp[2 * e + 1] = 2 * e;
    }
    // rotations[v] lists edge ids; a loop at v appears twice, first occurrence
    // meaning half-edge 2e and the second 2e+1.
    std::vector<int> seen(E, 0);
    std::vector<std::vector<int>> vrot(rotations.size());
    for (size_t v = 0; v < rotations.size(); ++v) {
        for (int e : rotations[v]) {
            int h;
            if (edges[e].first == edges[e].second) {
                h = 2 * e + seen[e];
                ++seen[e];
            } else if (static_cast<int>(v) == edges[e].first) {
                h = 2 * e;
            } else if (static_cast<int>(v) == edges[e].second) {
                h = 2 * e + 1;
            } else {
                throw BadMarker("rotation lists an edge not incident to the vertex");
            }
            vrot[v].push_back(h);
        }
    }
    for (const auto& r : vrot)
        for (size_t i = 0; i < r.size(); ++i) nxt[r[i]] = r[(i + 1) % r.size()];
    for (int h = 0; h < 2 * E; ++h)
        if (nxt[h] == -1) throw BadMarker("some half-edge missing from rotations");
    auto m = PlanarMap::build(std::move(opp), std::move(nxt), std::move(face_color));
    if (origin) {
        // Interpret origin against the caller's vertex numbering.
        for (int e = 0; e < E; ++e) {
            if (edges[e].first == *origin) return m.with_origin(m.vertex_of(2 * e));
            if (edges[e].second == *origin) return m.with_origin(m.vertex_of(2 * e + 1));
        }
        throw BadMarker("origin vertex has no incident edge");
    }
    return m;
}

std::string map_to_json(const PlanarMap& m) {
    nlohmann::json j;
    j["E"] = m.edge_count();
    std::vector<int> opp(m.half_edge_count()), nxt(m.half_edge_count());
    for (int h = 0; h < m.half_edge_count(); ++h) {
        opp[h] = m.opposite(h);
        nxt[h] = m.next_cw(h);
    }
    j["opposite"] = opp;
    j["next_cw"] = nxt;
    if (m.has_coloring()) {
        std::vector<std::string> colors(m.face_count());
        for (int f = 0; f < m.face_count(); ++f)
            colors[f] = m.face_color(f) == FaceColor::Black ? "b" : "w";
        j["face_color"] = colors;
    }
    if (m.origin()) j["origin"] = *m.origin();
    if (m.root()) j["root"] = *m.root();
    return j.dump(2) + "\n";
}

PlanarMap map_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<int> opp = j.at("opposite").get<std::vector<int>>();
    std::vector<int> nxt = j.at("next_cw").get<std::vector<int>>();
    if (j.contains("E") && j["E"].get<int>() * 2 != static_cast<int>(opp.size()))
        throw NotInvolution("E does not match the opposite array");
    std::optional<std::vector<FaceColor>> colors;
    if (j.contains("face_color")) {
        std::vector<FaceColor> c;
        for (const auto& s : j["face_color"]) {
            std::string t = s.get<std::string>();
            if (t == "b")
                c.push_back(FaceColor::Black);
            else if (t == "w")
                c.push_back(FaceColor::White);
            else
                throw BadColoring("face colors must be \"b\" or \"w\"");
        }
        colors = std::move(c);
    }
    std::optional<int> origin, root;
    if (j.contains("origin")) origin = j["origin"].get<int>();
    if (j.contains("root")) root = j["root"].get<int>();
    return PlanarMap::build(std::move(opp), std::move(nxt), std::move(colors), origin, root);
}

}  // namespace mapmob
