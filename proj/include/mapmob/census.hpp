#pragma once

#include <functional>
#include <gmpxx.h>
#include <map>
#include <string>
#include <vector>

#include "mapmob/bijection.hpp"
#include "mapmob/mobile.hpp"
#include "mapmob/planar_map.hpp"

namespace mapmob {

/// All isomorphism classes of connected planar maps with 1..max_edges edges,
/// generated by edge insertion (chords, pendants, joins) with canonical-code
/// deduplication. max_faces prunes the search; any map with F <= max_faces is
/// reachable through intermediates with F <= max_faces.
std::vector<PlanarMap> generate_maps(int max_edges, int max_faces = 1 << 30);

/// The proper face bicolorings of a map: zero when the face adjacency is not
/// bipartite, otherwise the two color swaps (possibly isomorphic as maps).
std::vector<PlanarMap> face_bicolorings(const PlanarMap& m);

enum class Marking { Pointed, PointedEdge };

struct CountKey {
    std::string flavor;
    std::vector<int> whites, blacks;  // face valences, sorted
    std::string marking;              // "pointed" or "pointed-edge:m->n"

    auto tie() const { return std::tie(flavor, whites, blacks, marking); }
    bool operator<(const CountKey& o) const { return tie() < o.tie(); }
};

struct CountTable {
    std::map<CountKey, long long> rows;

    long long at(const CountKey& k) const;
    /// Lines "flavor|whites|blacks|marking|count", sorted.
    std::string to_text() const;
};

std::string edge_marking_name(int m, int n);

/// Exhaustive pointed (and optionally edge-marked) map census. Eulerian and
/// constellation censuses run over face-bicolored classes with oriented
/// distances; bipartite and arbitrary ones over plain maps.
CountTable enumerate_maps(int max_edges, MobileFlavor flavor, Marking marking, int p = 0,
                          int max_faces = 1 << 30);

struct MobileBudget {
    std::vector<int> whites, blacks;  // face valences to use, exactly
};

/// Well-labeled mobiles rooted at a corner labeled root_label using exactly
/// the budget, each rooted isomorphism class exactly once. Bipartite budgets
/// have no blacks; constellation and arbitrary censuses enumerate through
/// their eulerian budgets.
void enumerate_rooted_mobiles(MobileFlavor flavor, int root_label, const MobileBudget& budget,
                              const std::function<void(const Mobile&)>& cb);

/// Well-labeled eulerian mobiles with a marked flagged edge carrying flags
/// (first, second) = (m, n), m >= n.
void enumerate_flag_rooted_mobiles(int m, int n, const MobileBudget& budget,
                                   const std::function<void(const Mobile&)>& cb);

/// Rooted mobile census over all budgets with at most max_faces faces of
/// valence at most max_valence (even only in the bipartite flavor).
CountTable enumerate_mobiles(int max_faces, int max_valence, MobileFlavor flavor,
                             int max_root_label);

/// Number of rooted planar maps with n edges: 2 (2n)! 3^n / (n! (n+2)!).
mpz_class tutte_rooted_count(int n_edges);

}  // namespace mapmob
