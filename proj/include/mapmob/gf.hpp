#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mapmob/mobile.hpp"  // MobileFlavor
#include "mapmob/series.hpp"

namespace mapmob {

/// Finite-support face weights. Every listed valence either carries a formal
/// variable (g<k> for white faces, h<k> for black ones) or the constant 1,
/// which keeps embeddings like "black bigons weigh 1" in the same ring.
struct WeightSpec {
    MobileFlavor flavor = MobileFlavor::Bipartite;
    int p = 0;       // constellations only
    int degree = 0;  // series truncation: total number of weighted faces

    std::map<int, bool> white;  // valence -> weight is the constant 1
    std::map<int, bool> black;

    static WeightSpec bipartite(const std::vector<int>& valences, int degree);
    static WeightSpec eulerian(const std::vector<int>& white, const std::vector<int>& black,
                               int degree);
    static WeightSpec constellation(int p, const std::vector<int>& white_multiples, int degree,
                                    bool unit_black = false);
    static WeightSpec arbitrary(const std::vector<int>& valences, int degree);

    /// Marks an already-listed valence as carrying the constant 1.
    WeightSpec& set_unit_white(int valence);
    WeightSpec& set_unit_black(int valence);

    SeriesVarsPtr make_vars() const;
    int max_valence() const;

    /// One-variable-per-weighted-face monomial for a face multiset.
    Monomial monomial(const SeriesVarsPtr& vars, const std::vector<int>& whites,
                      const std::vector<int>& blacks) const;
};

/// Solved recursion families, exact to the spec's truncation degree for all
/// indices 0..n_max. Bands: W(m, n) vanishes unless 0 <= m - n < band and
/// B(m, n) unless 0 <= n - m < band.
class SeriesSolution {
public:
    MobileFlavor flavor() const { return spec_.flavor; }
    const WeightSpec& spec() const { return spec_; }
    const SeriesVarsPtr& vars() const { return vars_; }
    int n_max() const { return n_max_; }

    const Series& R(int n) const;
    const Series& L(int n) const;
    const Series& S(int n) const;  // arbitrary maps: S_n = W(n, n)
    Series W(int m, int n) const;
    Series B(int m, int n) const;

    /// Smallest N with the degree-d part of R_n constant over [N, n_max].
    int stabilization_index(int d) const;

    friend class SolverImpl;

private:
    WeightSpec spec_;
    SeriesVarsPtr vars_;
    int n_max_ = 0;
    int band_ = 0;
    std::vector<Series> R_, L_, S_;
    std::vector<std::vector<Series>> Wb_, Bb_;  // [m][m - n], [m][n - m]
    std::vector<int> stabilization_;
};

SeriesSolution solve_bipartite(const WeightSpec& w, int n_max);
SeriesSolution solve_eulerian(const WeightSpec& w, int n_max);
SeriesSolution solve_p_constellation(const WeightSpec& w, int n_max);
SeriesSolution solve_arbitrary(const WeightSpec& w, int n_max);

/// Large-label limit R of R_n as the fixed point of the one-point equation
/// R = 1 / (1 - sum_k binom(2k-1, k) g_2k R^(k-1)).
Series solve_limit_R(const WeightSpec& w);

/// Banded operator on basis states |i> over the window [lo, hi].
struct TransferOperator {
    int lo = 0, hi = 0;
    int max_up = 0;  // largest upward jump of any row entry
    std::vector<std::vector<std::pair<int, Series>>> rows;  // rows[i - lo]

    static TransferOperator from_solution(const SeriesSolution& sol);
};

/// <n| Q^power |m>: the weighted sum over length-`power` walks from m to n.
/// Requires pad >= power * max_up above max(m, n), else WindowTooNarrow.
Series q_power_element(const TransferOperator& op, int n, int m, int power);

struct DerivedRequest {
    enum Kind {
        EdgeRise,          // R_n - R_{n-1}: pointed maps with an (n-1, n) edge
        LogDistance,       // Log(R_n / R_{n-1}); Log R_1 at n = 1
        OrientedEdge,      // B(n, m) W(m, n) - B(n-1, m-1) W(m-1, n-1): edge m -> n
        EqualEdge,         // S_n^2 - S_{n-1}^2: arbitrary maps with an (n, n) edge
        LimitW,            // lim_i W(i, i - m)
        LimitB             // lim_i B(i, i + m)
    } kind = EdgeRise;
    int n = 0, m = 0;
};

Series derived_series(const SeriesSolution& sol, const DerivedRequest& req);

}  // namespace mapmob
