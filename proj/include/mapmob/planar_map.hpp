#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapmob/errors.hpp"

namespace mapmob {

enum class FaceColor : uint8_t { Black, White };

struct FaceInfo {
    int id = 0;
    std::optional<FaceColor> color;
    int valence = 0;
    std::vector<int> contour;  // boundary half-edges, face on the right
};

/// Canonical form of a (possibly pointed/rooted, possibly face-colored) map.
/// Equal codes <=> isomorphic as oriented maps respecting all markings.
using CanonicalCode = std::vector<int32_t>;

std::string code_digest(const CanonicalCode& code);

/// Planar map on the oriented sphere as a half-edge rotation system.
/// Half-edges 0..2E-1; `opposite` pairs the two sides of each edge;
/// `next_cw` steps clockwise around the source vertex. Immutable once built.
class PlanarMap {
public:
    static PlanarMap build(std::vector<int> opposite, std::vector<int> next_cw,
                           std::optional<std::vector<FaceColor>> face_color = std::nullopt,
                           std::optional<int> origin = std::nullopt,
                           std::optional<int> root = std::nullopt);

    int half_edge_count() const { return static_cast<int>(opposite_.size()); }
    int edge_count() const { return half_edge_count() / 2; }
    int vertex_count() const { return n_vertices_; }
    int face_count() const { return n_faces_; }

    int opposite(int h) const { return opposite_[h]; }
    int next_cw(int h) const { return next_cw_[h]; }
    int prev_cw(int h) const { return prev_cw_[h]; }
    /// Next boundary half-edge of the face lying to the right of h.
    int next_in_face(int h) const { return prev_cw_[opposite_[h]]; }

    int vertex_of(int h) const { return he_vertex_[h]; }
    int face_right_of(int h) const { return he_face_[h]; }
    int target_of(int h) const { return he_vertex_[opposite_[h]]; }
    int degree(int v) const { return static_cast<int>(vertex_half_edges_[v].size()); }
    /// Half-edges out of v in clockwise order, starting at the smallest id.
    const std::vector<int>& half_edges_at(int v) const { return vertex_half_edges_[v]; }

    bool has_coloring() const { return !face_color_.empty(); }
    FaceColor face_color(int f) const { return face_color_[f]; }
    const std::optional<int>& origin() const { return origin_; }
    const std::optional<int>& root() const { return root_; }

    PlanarMap with_origin(int v) const;
    PlanarMap with_root(int h) const;
    PlanarMap without_markers() const;
    PlanarMap without_coloring() const;

    std::vector<FaceInfo> faces() const;
    int face_valence(int f) const { return static_cast<int>(face_contours_[f].size()); }
    const std::vector<int>& face_contour(int f) const { return face_contours_[f]; }

    /// True iff every face valence is even; such sphere maps are bipartite.
    bool is_even_bipartite() const;
    /// 2-coloring of vertices by BFS parity; requires is_even_bipartite().
    std::vector<int> vertex_two_coloring() const;

    /// Each edge becomes a 2-valent black face; original faces turn white.
    PlanarMap inflate_edges() const;
    /// Inverse of inflate_edges; requires every black face to be 2-valent.
    PlanarMap deflate_edges() const;

    CanonicalCode canonical_code() const;
    /// Orbits of half-edges under the automorphisms respecting markings.
    std::vector<int> automorphism_orbits() const;

    bool operator==(const PlanarMap& o) const;

private:
    PlanarMap() = default;
    void compute_orbits();
    CanonicalCode code_from_start(int start) const;

    std::vector<int> opposite_, next_cw_, prev_cw_;
    std::vector<int> he_vertex_, he_face_;
    std::vector<std::vector<int>> vertex_half_edges_;
    std::vector<std::vector<int>> face_contours_;
    std::vector<FaceColor> face_color_;  // empty when uncolored
    std::optional<int> origin_, root_;
    int n_vertices_ = 0, n_faces_ = 0;
};

/// Builds a small map from per-vertex clockwise lists of edge endpoints.
/// edges[e] = {u, v}; rotations[v] lists incident edge ids in cw order
/// (loops appear twice). Convenience for tests and fixtures.
PlanarMap map_from_rotations(const std::vector<std::pair<int, int>>& edges,
                             const std::vector<std::vector<int>>& rotations,
                             std::optional<std::vector<FaceColor>> face_color = std::nullopt,
                             std::optional<int> origin = std::nullopt);

std::string map_to_json(const PlanarMap& m);
PlanarMap map_from_json(const std::string& text);

}  // namespace mapmob
