#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mapmob/errors.hpp"

namespace mapmob {

/// Ordered set of formal variables plus a total-degree truncation cap.
/// All Series sharing a context are compatible for arithmetic.
struct SeriesVars {
    std::vector<std::string> names;
    int degree_cap = 0;

    int index_of(const std::string& name) const;
};

using SeriesVarsPtr = std::shared_ptr<const SeriesVars>;

SeriesVarsPtr make_series_vars(std::vector<std::string> names, int degree_cap);

/// Monomial as an exponent vector over the context's variables.
using Monomial = std::vector<uint8_t>;

int total_degree(const Monomial& m);

/// Exact multivariate power series truncated at total degree <= degree_cap.
/// Coefficients are exact rationals; zero coefficients are never stored.
class Series {
public:
    Series() = default;
    explicit Series(SeriesVarsPtr vars) : vars_(std::move(vars)) {}

    static Series zero(const SeriesVarsPtr& vars) { return Series(vars); }
    static Series constant(const SeriesVarsPtr& vars, const mpq_class& c);
    static Series variable(const SeriesVarsPtr& vars, int index);

    const SeriesVarsPtr& vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }

    mpq_class coeff(const Monomial& m) const;
    mpq_class constant_term() const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    Series& operator*=(const Series& o) { return *this = *this * o; }
    Series& operator*=(const mpq_class& c);
    friend Series operator*(Series a, const mpq_class& c) { return a *= c; }

    bool operator==(const Series& o) const { return terms_ == o.terms_; }
    bool operator!=(const Series& o) const { return !(*this == o); }

    /// 1/s for s with invertible constant term.
    Series reciprocal() const;
    /// log s for s with constant term 1.
    Series log() const;

    /// The homogeneous part of total degree d.
    Series degree_part(int d) const;
    int max_degree() const;

    /// One term per line: "num[/den] v1^e1 v2^e2", lines sorted by rendered
    /// monomial text; "0" for the zero series.
    std::string to_text() const;

    const std::map<Monomial, mpq_class>& terms() const { return terms_; }
    void add_term(const Monomial& m, const mpq_class& c);

private:
    void require_compatible(const Series& o) const;

    SeriesVarsPtr vars_;
    std::map<Monomial, mpq_class> terms_;
};

std::string monomial_text(const SeriesVars& vars, const Monomial& m);

}  // namespace mapmob
