#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mapmob/errors.hpp"
#include "mapmob/planar_map.hpp"  // CanonicalCode

namespace mapmob {

enum class MobileFlavor : uint8_t { Bipartite, Eulerian, PConstellation, Arbitrary };

std::string flavor_name(MobileFlavor f);
MobileFlavor flavor_from_name(const std::string& s);

enum class NodeKind : uint8_t { Labeled, White, Black };

struct MobileNode {
    NodeKind kind = NodeKind::Labeled;
    int label = 0;  // meaningful for Labeled only
};

enum class EdgeKind : uint8_t { Plain, Flagged, SingleFlag };

/// Flagged edges join a black to a white vertex. Reading clockwise around the
/// black endpoint the two flags appear as (first_at_black, second_at_black),
/// second <= first; the white side reads the same crossing as (second, first).
struct MobileEdge {
    int a = 0, b = 0;  // endpoint node ids
    EdgeKind kind = EdgeKind::Plain;
    int first_at_black = 0, second_at_black = 0;  // Flagged
    int flag = 0;                                 // SingleFlag
};

struct ContourItem {
    bool is_flag = false;
    int label = 0;      // corner label, or the flag value on this side
    int node = -1;      // apex vertex (corner) / source vertex (flag side)
    int half_edge = -1; // contour position; -1 for the isolated-vertex corner
};

struct ContourWalk {
    std::vector<ContourItem> items;
    int steps = 0;  // traversal length, 2 * edges
};

struct ValidityReport {
    bool ok = true;
    bool malformed = false;  // structural problem rather than a label rule
    int node = -1;           // offending unlabeled vertex (label rules)
    std::string message;
};

/// Plane tree with typed vertices and typed edges, one of four flavors.
/// Immutable once built; half-edge ids are 2e (at edge e's endpoint a) and
/// 2e+1 (at b), with opposite(h) = h ^ 1.
class Mobile {
public:
    /// rotations[v] lists incident edge ids in clockwise order.
    static Mobile build(MobileFlavor flavor, std::vector<MobileNode> nodes,
                        std::vector<MobileEdge> edges,
                        std::vector<std::vector<int>> rotations, int p = 0,
                        std::optional<int> root = std::nullopt);

    MobileFlavor flavor() const { return flavor_; }
    int constellation_p() const { return p_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const MobileNode& node(int v) const { return nodes_[v]; }
    const MobileEdge& edge(int e) const { return edges_[e]; }

    int half_edge_count() const { return 2 * edge_count(); }
    int src(int h) const { return h % 2 == 0 ? edges_[h / 2].a : edges_[h / 2].b; }
    int dst(int h) const { return src(h ^ 1); }
    int next_cw(int h) const { return next_cw_[h]; }
    int prev_cw(int h) const { return prev_cw_[h]; }
    const std::vector<int>& half_edges_at(int v) const { return rotations_[v]; }
    int degree(int v) const { return static_cast<int>(rotations_[v].size()); }

    /// Flag value read on the side of half-edge h (Flagged or SingleFlag edge).
    int flag_on(int h) const;

    const std::optional<int>& root() const { return root_; }
    Mobile with_root(int contour_index) const;
    Mobile without_root() const;

    ContourWalk contour() const;
    ValidityReport validate() const;
    bool check_well_labeled() const;

    Mobile simplify(MobileFlavor target, int p = 0) const;
    Mobile unsimplify() const;

    /// Same tree under another flavor; the structural typing must fit.
    Mobile as_flavor(MobileFlavor target, int p = 0) const;

    /// Equal codes <=> plane-isomorphic with identical decorations (and equal
    /// roots, when present).
    CanonicalCode canonical_code() const;

    bool operator==(const Mobile& o) const;

private:
    Mobile() = default;
    CanonicalCode code_from_start(int start) const;

    MobileFlavor flavor_ = MobileFlavor::Bipartite;
    int p_ = 0;
    std::vector<MobileNode> nodes_;
    std::vector<MobileEdge> edges_;
    std::vector<std::vector<int>> rotations_;  // half-edge ids, cw per node
    std::vector<int> next_cw_, prev_cw_;
    std::optional<int> root_;
};

std::string mobile_to_json(const Mobile& m);
Mobile mobile_from_json(const std::string& text);

}  // namespace mapmob
