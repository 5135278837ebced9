#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mapmob/mobile.hpp"
#include "mapmob/planar_map.hpp"

namespace mapmob {

/// Per-vertex geodesic distance from the origin. Colored maps use oriented
/// distances along the black-face-on-the-right edge orientation; uncolored
/// maps use ordinary (both-ways) distances.
using VertexLabeling = std::vector<int>;

VertexLabeling label_distances(const PlanarMap& m, int origin);

/// True iff every face valence is even; verified constructively by building
/// a proper vertex 2-coloring.
bool check_even_bipartite(const PlanarMap& m);

/// Throws InternalError when the labeling violates the flavor's edge
/// increment rule. Test support.
void check_labeling_invariants(const PlanarMap& m, const VertexLabeling& labels,
                               MobileFlavor flavor, int p = 0);

Mobile map_to_mobile_bipartite(const PlanarMap& m, int origin);
std::pair<PlanarMap, int> mobile_to_map_bipartite(const Mobile& t);

Mobile map_to_mobile_eulerian(const PlanarMap& m, int origin);
std::pair<PlanarMap, int> mobile_to_map_eulerian(const Mobile& t);

/// Flavor dispatcher. PConstellation expects a colored constellation map (p
/// inferred from black faces); Arbitrary runs inflate -> eulerian -> simplify.
Mobile map_to_mobile(const PlanarMap& m, int origin, MobileFlavor flavor);
std::pair<PlanarMap, int> mobile_to_map(const Mobile& t);

struct DistanceProfile {
    std::map<int, long long> v;                      // distance -> vertex count
    std::map<std::pair<int, int>, long long> e;      // sorted label pair -> edge count
};

DistanceProfile profile(const PlanarMap& m, int origin);

}  // namespace mapmob
