#include "doctest.h"

#include "mapmob/series.hpp"

using namespace mapmob;

namespace {

Monomial mono(const SeriesVarsPtr& vars, std::initializer_list<int> exps) {
    Monomial m(vars->names.size(), 0);
    size_t i = 0;
    for (int e : exps) m[i++] = static_cast<uint8_t>(e);
    return m;
}

}  // namespace

TEST_CASE("series arithmetic is exact and truncated") {
    auto vars = make_series_vars({"g4"}, 4);
    Series g = Series::variable(vars, 0);
    Series one = Series::constant(vars, 1);

    Series s = one + g * mpq_class(3);
    Series sq = s * s;
    CHECK(sq.coeff(mono(vars, {0})) == 1);
    CHECK(sq.coeff(mono(vars, {1})) == 6);
    CHECK(sq.coeff(mono(vars, {2})) == 9);

    // truncation: g^5 never appears
    Series p = g * g * g * g * g;
    CHECK(p.is_zero());
}

TEST_CASE("reciprocal inverts exactly up to the cap") {
    auto vars = make_series_vars({"a", "b"}, 5);
    Series s = Series::constant(vars, 1) + Series::variable(vars, 0) +
               Series::variable(vars, 1) * Series::variable(vars, 0) * mpq_class(7, 3);
    Series r = s.reciprocal();
    Series prod = s * r;
    CHECK(prod == Series::constant(vars, 1));

    // non-unit constant term
    Series t = Series::constant(vars, mpq_class(2, 5)) + Series::variable(vars, 1);
    CHECK(t.reciprocal() * t == Series::constant(vars, 1));
}

TEST_CASE("geometric series via reciprocal") {
    auto vars = make_series_vars({"g2"}, 6);
    Series g = Series::variable(vars, 0);
    Series r = (Series::constant(vars, 1) - g).reciprocal();
    for (int d = 0; d <= 6; ++d) CHECK(r.coeff(mono(vars, {d})) == 1);
}

TEST_CASE("log matches the power sum identity") {
    auto vars = make_series_vars({"x"}, 6);
    Series x = Series::variable(vars, 0);
    Series one = Series::constant(vars, 1);
    // log(1/(1-x)) == sum_k x^k / k
    Series lhs = (one - x).reciprocal().log();
    Series rhs = Series::zero(vars);
    Series pw = one;
    for (int k = 1; k <= 6; ++k) {
        pw = pw * x;
        rhs += pw * mpq_class(1, k);
    }
    CHECK(lhs == rhs);
}

TEST_CASE("text rendering sorts by monomial and drops unit denominators") {
    auto vars = make_series_vars({"g2", "g4"}, 3);
    Series s = Series::constant(vars, 1);
    s.add_term(mono(vars, {1, 1}), mpq_class(-5));
    s.add_term(mono(vars, {0, 1}), mpq_class(1, 2));
    std::string text = s.to_text();
    CHECK(text == "1\n-5 g2^1 g4^1\n1/2 g4^1\n");
}

TEST_CASE("degree parts split the series") {
    auto vars = make_series_vars({"x", "y"}, 4);
    Series s = (Series::constant(vars, 1) + Series::variable(vars, 0) +
                Series::variable(vars, 1))
                   .reciprocal();
    Series total = Series::zero(vars);
    for (int d = 0; d <= 4; ++d) total += s.degree_part(d);
    CHECK(total == s);
    CHECK(s.max_degree() == 4);
}
