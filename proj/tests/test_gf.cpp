#include "doctest.h"

#include "mapmob/gf.hpp"

using namespace mapmob;

namespace {

Monomial pow_of(const SeriesVarsPtr& vars, const std::string& name, int e) {
    Monomial m(vars->names.size(), 0);
    m[vars->index_of(name)] = static_cast<uint8_t>(e);
    return m;
}

// free operator Q|i> = |i+1> + R_i |i-1> with symbolic R entries, centered
// so that walks of length <= pad stay inside
struct SymbolicQ {
    TransferOperator op;
    SeriesVarsPtr vars;
    int n;  // the window center playing the paper's n

    explicit SymbolicQ(int pad) {
        n = pad + 1;
        int size = 2 * pad + 3;
        std::vector<std::string> names;
        for (int i = 0; i < size; ++i) names.push_back("R" + std::to_string(i));
        vars = make_series_vars(names, 4);
        op.lo = 0;
        op.hi = size - 1;
        op.max_up = 1;
        op.rows.resize(size);
        for (int i = 0; i < size; ++i) {
            op.rows[i].push_back({i + 1, Series::constant(vars, 1)});
            op.rows[i].push_back({i - 1, Series::variable(vars, i)});
        }
    }

    Series R(int offset) const { return Series::variable(vars, n + offset); }
};

}  // namespace

TEST_CASE("transfer matrix elements match the printed polynomials") {
    SymbolicQ q(6);
    Series one = Series::constant(q.vars, 1);

    CHECK(q_power_element(q.op, q.n, q.n - 1, 1) == one);

    Series q3 = q_power_element(q.op, q.n, q.n - 1, 3);
    CHECK(q3 == q.R(0) + q.R(1) + q.R(-1));

    Series q5 = q_power_element(q.op, q.n, q.n - 1, 5);
    Series expected = q.R(1) * q.R(2) + q.R(1) * q.R(-1) + q.R(-1) * q.R(-2) +
                      q.R(1) * q.R(1) + q.R(0) * q.R(0) + q.R(-1) * q.R(-1) +
                      (q.R(0) * (q.R(1) + q.R(-1))) * mpq_class(2);
    CHECK(q5 == expected);

    CHECK_THROWS_AS(q_power_element(q.op, q.n, q.n - 1, 100), WindowTooNarrow);
    CHECK_THROWS_AS(q_power_element(q.op, -3, 0, 1), WindowTooNarrow);
}

TEST_CASE("bipartite solver: bigon weights give the geometric series") {
    WeightSpec w = WeightSpec::bipartite({2}, 6);
    SeriesSolution sol = solve_bipartite(w, 3);
    for (int n = 1; n <= 3; ++n)
        for (int d = 0; d <= 6; ++d) CHECK(sol.R(n).coeff(pow_of(sol.vars(), "g2", d)) == 1);
    CHECK(sol.L(1) == Series::variable(sol.vars(), 0));
}

TEST_CASE("bipartite solver: quadrangulation coefficients") {
    WeightSpec w = WeightSpec::bipartite({4}, 2);
    SeriesSolution sol = solve_bipartite(w, 4);
    auto c = [&](const Series& s, int d) { return s.coeff(pow_of(sol.vars(), "g4", d)); };
    CHECK(c(sol.R(1), 0) == 1);
    CHECK(c(sol.R(1), 1) == 2);
    CHECK(c(sol.R(1), 2) == 9);
    CHECK(c(sol.R(3), 0) == 1);
    CHECK(c(sol.R(3), 1) == 3);
    CHECK(c(sol.R(3), 2) == 18);
}

TEST_CASE("limit R") {
    WeightSpec w4 = WeightSpec::bipartite({4}, 4);
    Series r = solve_limit_R(w4);
    std::vector<long> want{1, 3, 18, 135, 1134};
    auto vars = w4.make_vars();
    for (int d = 0; d <= 4; ++d) CHECK(r.coeff(pow_of(vars, "g4", d)) == want[d]);

    WeightSpec w2 = WeightSpec::bipartite({2}, 5);
    Series r2 = solve_limit_R(w2);
    auto vars2 = w2.make_vars();
    for (int d = 0; d <= 5; ++d) CHECK(r2.coeff(pow_of(vars2, "g2", d)) == 1);

    WeightSpec none = WeightSpec::bipartite({}, 3);
    CHECK(solve_limit_R(none) == Series::constant(none.make_vars(), 1));
}

TEST_CASE("eulerian solver: smallest families") {
    WeightSpec w = WeightSpec::eulerian({1}, {1}, 3);
    SeriesSolution sol = solve_eulerian(w, 2);
    CHECK(sol.W(0, 0) == Series::variable(sol.vars(), sol.vars()->index_of("g1")));
    CHECK(sol.B(0, 0) == Series::variable(sol.vars(), sol.vars()->index_of("h1")));
    Series prod = derived_series(sol, {DerivedRequest::OrientedEdge, 0, 0});
    Monomial g1h1(sol.vars()->names.size(), 0);
    g1h1[sol.vars()->index_of("g1")] = 1;
    g1h1[sol.vars()->index_of("h1")] = 1;
    CHECK(prod.coeff(g1h1) == 1);
    CHECK(prod == sol.B(0, 0) * sol.W(0, 0));

    WeightSpec none = WeightSpec::eulerian({}, {}, 3);
    SeriesSolution empty = solve_eulerian(none, 2);
    CHECK(empty.R(1) == Series::constant(empty.vars(), 1));
    CHECK(empty.L(1).is_zero());
    CHECK(empty.W(1, 1).is_zero());
    CHECK(empty.B(1, 1).is_zero());
}

TEST_CASE("cross-solver: eulerian with unit bigons reproduces bipartite") {
    WeightSpec bip = WeightSpec::bipartite({2, 4}, 4);
    SeriesSolution a = solve_bipartite(bip, 4);
    WeightSpec eul = WeightSpec::eulerian({2, 4}, {2}, 4).set_unit_black(2);
    SeriesSolution b = solve_eulerian(eul, 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(a.R(n) == b.R(n));
        CHECK(a.L(n) == b.L(n));
    }
}

TEST_CASE("cross-solver: 2-constellations with unit blacks reproduce bipartite") {
    WeightSpec bip = WeightSpec::bipartite({4}, 4);
    SeriesSolution a = solve_bipartite(bip, 4);
    WeightSpec con = WeightSpec::constellation(2, {4}, 4, /*unit_black=*/true);
    SeriesSolution b = solve_p_constellation(con, 4);
    for (int n = 1; n <= 4; ++n) CHECK(a.R(n) == b.R(n));
}

TEST_CASE("p = 3 constellations") {
    WeightSpec w = WeightSpec::constellation(3, {3}, 2);
    SeriesSolution sol = solve_p_constellation(w, 3);
    Monomial g3h3(sol.vars()->names.size(), 0);
    g3h3[sol.vars()->index_of("g3")] = 1;
    g3h3[sol.vars()->index_of("h3")] = 1;
    // L_n = g3 h3 (R_{n+1} + R_{n-1}): degree-2 coefficients 1 and 2
    CHECK(sol.L(1).coeff(g3h3) == 1);
    CHECK(sol.L(2).coeff(g3h3) == 2);
    CHECK(sol.R(1).coeff(g3h3) == 1);
    CHECK(sol.B(0, 2) == Series::variable(sol.vars(), sol.vars()->index_of("h3")));
    CHECK(sol.B(0, 1).is_zero());

    CHECK_THROWS_AS(WeightSpec::constellation(3, {4}, 2), BadSupport);
    CHECK_THROWS_AS(WeightSpec::constellation(1, {1}, 2), BadSupport);
}

TEST_CASE("arbitrary maps solver") {
    WeightSpec none = WeightSpec::arbitrary({}, 3);
    SeriesSolution empty = solve_arbitrary(none, 2);
    CHECK(empty.R(1) == Series::constant(empty.vars(), 1));
    CHECK(empty.S(0).is_zero());

    WeightSpec w1 = WeightSpec::arbitrary({1}, 3);
    SeriesSolution s1 = solve_arbitrary(w1, 2);
    CHECK(s1.S(0).coeff(pow_of(s1.vars(), "g1", 1)) == 1);

    // even-valence maps agree across the bipartite and arbitrary systems
    WeightSpec w4a = WeightSpec::arbitrary({4}, 4);
    SeriesSolution arb = solve_arbitrary(w4a, 3);
    SeriesSolution bip = solve_bipartite(WeightSpec::bipartite({4}, 4), 3);
    for (int n = 1; n <= 3; ++n) CHECK(arb.R(n) == bip.R(n));
    // odd-parity objects vanish: no (n, n) edges in even-valence maps
    CHECK(arb.S(1).is_zero());
}

TEST_CASE("arbitrary maps match eulerian with unit bigons through inflation") {
    WeightSpec arb = WeightSpec::arbitrary({1, 3}, 3);
    SeriesSolution a = solve_arbitrary(arb, 3);
    WeightSpec eul = WeightSpec::eulerian({1, 3}, {2}, 3).set_unit_black(2);
    SeriesSolution b = solve_eulerian(eul, 3);
    for (int n = 1; n <= 3; ++n) CHECK(a.R(n) == b.R(n));
    for (int n = 0; n <= 3; ++n) CHECK(a.S(n) == b.W(n, n));
    // B(n, n+1) = 1 and B(n, n) = W(n, n) under unit bigons
    CHECK(b.B(0, 1) == Series::constant(b.vars(), 1));
    CHECK(b.B(1, 1) == b.W(1, 1));
}

TEST_CASE("derived series: edge rise and log identity") {
    WeightSpec w = WeightSpec::bipartite({4}, 5);
    SeriesSolution sol = solve_bipartite(w, 6);
    Series rise1 = derived_series(sol, {DerivedRequest::EdgeRise, 1, 0});
    CHECK(rise1 == sol.R(1));
    CHECK(rise1.coeff(pow_of(sol.vars(), "g4", 1)) == 2);
    CHECK(rise1.coeff(pow_of(sol.vars(), "g4", 2)) == 9);

    // Log R_n = sum_{k <= D} L_n^k / k, exactly in rationals
    for (int n = 1; n <= 4; ++n) {
        Series log_r = sol.R(n).log();
        Series sum = Series::zero(sol.vars());
        Series pw = Series::constant(sol.vars(), 1);
        for (int k = 1; k <= 5; ++k) {
            pw = pw * sol.L(n);
            sum += pw * mpq_class(1, k);
        }
        CHECK(log_r == sum);
    }
    Series log1 = derived_series(sol, {DerivedRequest::LogDistance, 1, 0});
    CHECK(log1 == sol.R(1).log());
    Series log2 = derived_series(sol, {DerivedRequest::LogDistance, 2, 0});
    CHECK(log2 == sol.R(2).log() - sol.R(1).log());

    CHECK_THROWS_AS(derived_series(sol, {DerivedRequest::EdgeRise, 99, 0}),
                    IndexBeyondStabilization);
}

TEST_CASE("monotonicity and stabilization against the limit") {
    WeightSpec w = WeightSpec::bipartite({2, 4, 6}, 4);
    int n_max = 4 * 6 + 2;
    SeriesSolution sol = solve_bipartite(w, n_max);
    for (int n = 1; n < n_max; ++n) {
        Series diff = sol.R(n + 1) - sol.R(n);
        for (const auto& [mono, c] : diff.terms()) CHECK(c >= 0);
    }
    Series limit = solve_limit_R(w);
    for (int d = 0; d <= 4; ++d) {
        int N = sol.stabilization_index(d);
        CHECK(N <= n_max);
        for (int n = N; n <= n_max; ++n)
            CHECK(sol.R(n).degree_part(d) == limit.degree_part(d));
        if (N > 1) CHECK(sol.R(N - 1).degree_part(d) != limit.degree_part(d));
    }
}

TEST_CASE("large-label limits of W and B stabilize") {
    WeightSpec w = WeightSpec::eulerian({1, 2}, {1, 2}, 2);
    SeriesSolution sol = solve_eulerian(w, 2 * 2 + 4);
    Series w0 = derived_series(sol, {DerivedRequest::LimitW, 0, 0});
    Series w1 = derived_series(sol, {DerivedRequest::LimitW, 0, 1});
    Series b0 = derived_series(sol, {DerivedRequest::LimitB, 0, 0});
    CHECK(!w0.is_zero());
    CHECK(!b0.is_zero());
    CHECK(w1.max_degree() <= 2);
}
