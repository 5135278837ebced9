#include "mapmob/series.hpp"

#include <algorithm>
#include <sstream>

namespace mapmob {

int SeriesVars::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw InternalError("unknown series variable " + name);
}

SeriesVarsPtr make_series_vars(std::vector<std::string> names, int degree_cap) {
    if (degree_cap < 0) throw InternalError("negative degree cap");
    auto v = std::make_shared<SeriesVars>();
    v->names = std::move(names);
    v->degree_cap = degree_cap;
    return v;
}

int total_degree(const Monomial& m) {
    int d = 0;
    for (uint8_t e : m) d += e;
    return d;
}

Series Series::constant(const SeriesVarsPtr& vars, const mpq_class& c) {
    Series s(vars);
    if (c != 0) s.terms_[Monomial(vars->names.size(), 0)] = c;
    return s;
}

Series Series::variable(const SeriesVarsPtr& vars, int index) {
    Series s(vars);
    if (vars->degree_cap >= 1) {
        Monomial m(vars->names.size(), 0);
        m[index] = 1;
        s.terms_[m] = 1;
    }
    return s;
}

mpq_class Series::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class Series::constant_term() const {
    if (!vars_) return 0;
    return coeff(Monomial(vars_->names.size(), 0));
}

void Series::require_compatible(const Series& o) const {
    if (vars_ != o.vars_) throw InternalError("series contexts differ");
}

void Series::add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    if (total_degree(m) > vars_->degree_cap) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Series& Series::operator+=(const Series& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, mpq_class(-c));
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    a.require_compatible(b);
    Series out(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    const int cap = a.vars_->degree_cap;
    const size_t nv = a.vars_->names.size();
    Monomial m(nv, 0);
    for (const auto& [ma, ca] : a.terms_) {
        const int da = total_degree(ma);
        for (const auto& [mb, cb] : b.terms_) {
            if (da + total_degree(mb) > cap) continue;
            for (size_t i = 0; i < nv; ++i) m[i] = static_cast<uint8_t>(ma[i] + mb[i]);
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

Series& Series::operator*=(const mpq_class& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Series Series::reciprocal() const {
    mpq_class c0 = constant_term();
    if (c0 == 0) throw InternalError("reciprocal of series with zero constant term");
    // 1/s = (1/c0) * sum_k x^k  with  x = 1 - s/c0  (x has no constant term).
    Series x = constant(vars_, 1);
    Series scaled = *this;
    scaled *= mpq_class(1 / c0);
    x -= scaled;
    Series out = constant(vars_, 1);
    Series pw = constant(vars_, 1);
    for (int k = 1; k <= vars_->degree_cap; ++k) {
        pw = pw * x;
        if (pw.is_zero()) break;
        out += pw;
    }
    out *= mpq_class(1 / c0);
    return out;
}

Series Series::log() const {
    if (constant_term() != 1) throw InternalError("log of series with constant term != 1");
    // log(1+y) = sum_k (-1)^{k+1} y^k / k  with  y = s - 1.
    Series y = *this;
    y -= constant(vars_, 1);
    Series out = zero(vars_);
    Series pw = constant(vars_, 1);
    for (int k = 1; k <= vars_->degree_cap; ++k) {
        pw = pw * y;
        if (pw.is_zero()) break;
        mpq_class c(k % 2 == 1 ? 1 : -1, k);
        Series term = pw;
        term *= c;
        out += term;
    }
    return out;
}

Series Series::degree_part(int d) const {
    Series out(vars_);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) == d) out.terms_[m] = c;
    return out;
}

int Series::max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
}

std::string monomial_text(const SeriesVars& vars, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << ' ';
        first = false;
        os << vars.names[i] << '^' << int(m[i]);
    }
    return os.str();
}

std::string Series::to_text() const {
    if (terms_.empty()) return "0\n";
    std::vector<std::string> lines;
    for (const auto& [m, c] : terms_) {
        std::ostringstream os;
        os << c.get_num();
        if (c.get_den() != 1) os << '/' << c.get_den();
        std::string mono = monomial_text(*vars_, m);
        if (!mono.empty()) os << ' ' << mono;
        lines.push_back(os.str());
    }
    std::sort(lines.begin(), lines.end(), [](const std::string& a, const std::string& b) {
        auto key = [](const std::string& s) {
            size_t p = s.find(' ');
            return p == std::string::npos ? std::string() : s.substr(p + 1);
        };
        return key(a) < key(b);
    });
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace mapmob
