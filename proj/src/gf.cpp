#include "mapmob/gf.hpp"

#include <algorithm>
#include <sstream>

namespace mapmob {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw BadSupport(msg);
}

}  // namespace

WeightSpec WeightSpec::bipartite(const std::vector<int>& valences, int degree) {
    WeightSpec w;
    w.flavor = MobileFlavor::Bipartite;
    w.degree = degree;
    for (int k : valences) {
        require(k >= 2 && k % 2 == 0, "bipartite weights live on even valences");
        w.white[k] = false;
    }
    return w;
}

WeightSpec WeightSpec::eulerian(const std::vector<int>& white, const std::vector<int>& black,
                                int degree) {
    WeightSpec w;
    w.flavor = MobileFlavor::Eulerian;
    w.degree = degree;
    for (int k : white) {
        require(k >= 1, "face valences are positive");
        w.white[k] = false;
    }
    for (int k : black) {
        require(k >= 1, "face valences are positive");
        w.black[k] = false;
    }
    return w;
}

WeightSpec WeightSpec::constellation(int p, const std::vector<int>& white_multiples, int degree,
                                     bool unit_black) {
    WeightSpec w;
    w.flavor = MobileFlavor::PConstellation;
    w.p = p;
    w.degree = degree;
    require(p >= 2, "constellations need p >= 2");
    for (int k : white_multiples) {
        require(k >= p && k % p == 0, "white valences must be positive multiples of p");
        w.white[k] = false;
    }
    w.black[p] = unit_black;
    return w;
}

WeightSpec WeightSpec::arbitrary(const std::vector<int>& valences, int degree) {
    WeightSpec w;
    w.flavor = MobileFlavor::Arbitrary;
    w.degree = degree;
    for (int k : valences) {
        require(k >= 1, "face valences are positive");
        w.white[k] = false;
    }
    return w;
}

WeightSpec& WeightSpec::set_unit_white(int valence) {
    auto it = white.find(valence);
    require(it != white.end(), "valence not in support");
    it->second = true;
    return *this;
}

WeightSpec& WeightSpec::set_unit_black(int valence) {
    auto it = black.find(valence);
    require(it != black.end(), "valence not in support");
    it->second = true;
    return *this;
}

SeriesVarsPtr WeightSpec::make_vars() const {
    std::vector<std::string> names;
    for (const auto& [k, unit] : white)
        if (!unit) names.push_back("g" + std::to_string(k));
    for (const auto& [k, unit] : black)
        if (!unit) names.push_back("h" + std::to_string(k));
    return make_series_vars(std::move(names), degree);
}

int WeightSpec::max_valence() const {
    int m = 1;
    for (const auto& [k, unit] : white) m = std::max(m, k);
    for (const auto& [k, unit] : black) m = std::max(m, k);
    return m;
}

Monomial WeightSpec::monomial(const SeriesVarsPtr& vars, const std::vector<int>& whites,
                              const std::vector<int>& blacks) const {
    Monomial m(vars->names.size(), 0);
    auto bump = [&](const std::map<int, bool>& weights, char prefix, int k) {
        auto it = weights.find(k);
        require(it != weights.end(), "face valence outside the weight support");
        if (it->second) return;  // constant-1 weight
        int idx = vars->index_of(prefix + std::to_string(k));
        ++m[idx];
    };
    for (int k : whites) bump(white, 'g', k);
    for (int k : blacks) bump(black, 'h', k);
    return m;
}

// ---------------------------------------------------------------------------

const Series& SeriesSolution::R(int n) const {
    if (n <= 0) return R_[0];  // boundary zero
    if (n > n_max_) throw IndexBeyondStabilization("R index beyond n_max");
    return R_[n];
}

const Series& SeriesSolution::L(int n) const {
    if (n <= 0) return L_[0];
    if (n > n_max_) throw IndexBeyondStabilization("L index beyond n_max");
    return L_[n];
}

const Series& SeriesSolution::S(int n) const {
    if (S_.empty()) throw InternalError("this flavor has no S family");
    if (n < 0) return L_[0];  // boundary zero series
    if (n > n_max_) throw IndexBeyondStabilization("S index beyond n_max");
    return S_[n];
}

Series SeriesSolution::W(int m, int n) const {
    if (Wb_.empty()) throw InternalError("this flavor has no W family");
    if (m < 0 || n < 0) return Series::zero(vars_);
    if (m > n_max_) throw IndexBeyondStabilization("W index beyond n_max");
    int d = m - n;
    if (d < 0 || d >= band_) return Series::zero(vars_);
    return Wb_[m][d];
}

Series SeriesSolution::B(int m, int n) const {
    if (Bb_.empty()) throw InternalError("this flavor has no B family");
    if (m < 0 || n < 0) return Series::zero(vars_);
    if (m > n_max_) throw IndexBeyondStabilization("B index beyond n_max");
    int d = n - m;
    if (d < 0 || d >= band_) return Series::zero(vars_);
    return Bb_[m][d];
}

int SeriesSolution::stabilization_index(int d) const {
    if (d < 0 || d > spec_.degree) throw IndexBeyondStabilization("degree beyond truncation");
    return stabilization_[d];
}

// ---------------------------------------------------------------------------

// All recursion systems share this walk engine. Families live on an internal
// window [0, hi] sized so that every walk contributing a degree <= D
// coefficient of an index <= n_max element stays inside; amplitude stepping
// outside is dropped, which is exact under the boundary conditions and the
// window sizing (a degree-d object shifts labels by at most d * max_valence).
class SolverImpl {
public:
    SolverImpl(const WeightSpec& spec, int n_max) : spec_(spec), n_max_(n_max) {
        if (n_max < 1) throw BadSupport("n_max must be at least 1");
        vars_ = spec.make_vars();
        zero_ = Series::zero(vars_);
        one_ = Series::constant(vars_, 1);
        maxval_ = spec.max_valence();
        band_ = maxval_;
        hi_ = n_max + spec.degree * maxval_ + 2;
        for (const auto& [k, unit] : spec.white)
            gw_[k] =
                unit ? one_ : Series::variable(vars_, vars_->index_of("g" + std::to_string(k)));
        for (const auto& [k, unit] : spec.black)
            gb_[k] =
                unit ? one_ : Series::variable(vars_, vars_->index_of("h" + std::to_string(k)));
        R_.assign(hi_ + 1, one_);
        R_[0] = zero_;
        L_.assign(hi_ + 1, zero_);
        S_.assign(hi_ + 1, zero_);
        Wb_.assign(hi_ + 1, std::vector<Series>(band_, zero_));
        Bb_.assign(hi_ + 1, std::vector<Series>(band_, zero_));
    }

    SeriesSolution solve() {
        // Degree-d coefficients are exact after d sweeps; one extra sweep
        // certifies the fixed point by reproducing everything unchanged.
        const int sweeps_cap = spec_.degree + 3;
        bool converged = false;
        for (int sweep = 0; sweep < sweeps_cap && !converged; ++sweep) converged = run_sweep();
        if (!converged) throw InternalError("series solver failed to reach its fixed point");
        return finalize();
    }

private:
    using Vec = std::vector<Series>;

    Vec basis(int m) const {
        Vec v(hi_ + 1, zero_);
        v[m] = one_;
        return v;
    }

    template <typename RowFn>
    Vec apply(const Vec& v, RowFn row) const {
        Vec out(hi_ + 1, zero_);
        for (int i = 0; i <= hi_; ++i) {
            if (v[i].is_zero()) continue;
            for (const auto& [j, wgt] : row(i)) {
                if (j < 0 || j > hi_ || wgt->is_zero()) continue;
                out[j] += v[i] * *wgt;
            }
        }
        return out;
    }

    std::vector<std::pair<int, const Series*>> q_row(int i) const {
        std::vector<std::pair<int, const Series*>> r;
        switch (spec_.flavor) {
            case MobileFlavor::Bipartite:
                r = {{i + 1, &one_}, {i - 1, &R_[i]}};
                break;
            case MobileFlavor::PConstellation:
                r = {{i + spec_.p - 1, &gb_.at(spec_.p)}, {i - 1, &R_[i]}};
                break;
            case MobileFlavor::Arbitrary:
                r = {{i + 1, &one_}, {i, &S_[i]}, {i - 1, &R_[i]}};
                break;
            case MobileFlavor::Eulerian:
                r.push_back({i - 1, &R_[i]});
                for (int d = 0; d < band_; ++d) r.push_back({i + d, &Bb_[i][d]});
                break;
        }
        return r;
    }

    std::vector<std::pair<int, const Series*>> qt_row(
        int i, const std::vector<std::vector<Series>>& W) const {
        std::vector<std::pair<int, const Series*>> r{{i + 1, &one_}};
        for (int d = 0; d < band_; ++d)
            if (i - d >= 0) r.push_back({i - d, &W[i][d]});
        return r;
    }

    bool run_sweep() {
        const bool eulerian = spec_.flavor == MobileFlavor::Eulerian;
        const bool arbitrary = spec_.flavor == MobileFlavor::Arbitrary;

        Vec Lnew(hi_ + 1, zero_), Snew(hi_ + 1, zero_);
        std::vector<std::vector<Series>> Wnew(hi_ + 1, std::vector<Series>(band_, zero_));

        for (int m = 0; m <= hi_; ++m) {
            // length-0 walks: the k = 1 face terms
            if (auto it = gw_.find(1); it != gw_.end()) {
                if (eulerian) Wnew[m][0] += it->second;
                if (arbitrary) Snew[m] += it->second;
            }
            Vec v = basis(m);
            for (int t = 1; t <= maxval_ - 1; ++t) {
                v = apply(v, [&](int i) { return q_row(i); });
                auto it = gw_.find(t + 1);
                if (it == gw_.end()) continue;
                const Series& g = it->second;
                if (m + 1 <= hi_ && !v[m + 1].is_zero()) Lnew[m + 1] += g * v[m + 1];
                if (eulerian)
                    for (int d = 0; d < band_ && m - d >= 0; ++d)
                        if (!v[m - d].is_zero()) Wnew[m][d] += g * v[m - d];
                if (arbitrary && !v[m].is_zero()) Snew[m] += g * v[m];
            }
        }

        std::vector<std::vector<Series>> Bnew(hi_ + 1, std::vector<Series>(band_, zero_));
        if (eulerian) {
            // B reads the fresh W so that unit black weights still gain one
            // exact degree per sweep.
            for (int m = 0; m <= hi_; ++m) {
                if (auto it = gb_.find(1); it != gb_.end()) Bnew[m][0] += it->second;
                Vec v = basis(m);
                for (int t = 1; t <= maxval_ - 1; ++t) {
                    v = apply(v, [&](int i) { return qt_row(i, Wnew); });
                    auto it = gb_.find(t + 1);
                    if (it == gb_.end()) continue;
                    for (int d = 0; d < band_ && m + d <= hi_; ++d)
                        if (!v[m + d].is_zero()) Bnew[m][d] += it->second * v[m + d];
                }
            }
        } else if (spec_.flavor == MobileFlavor::PConstellation) {
            for (int m = 0; m <= hi_; ++m)
                if (spec_.p - 1 < band_) Bnew[m][spec_.p - 1] = gb_.at(spec_.p);
        }

        Vec Rnew(hi_ + 1, zero_);
        for (int n = 1; n <= hi_; ++n) Rnew[n] = (one_ - Lnew[n]).reciprocal();

        bool same = Rnew == R_ && Lnew == L_ && Snew == S_ && Wnew == Wb_ && Bnew == Bb_;
        R_ = std::move(Rnew);
        L_ = std::move(Lnew);
        S_ = std::move(Snew);
        Wb_ = std::move(Wnew);
        Bb_ = std::move(Bnew);
        return same;
    }

    SeriesSolution finalize() {
        if (spec_.flavor == MobileFlavor::PConstellation) {
            // W follows from the converged operator in one pass
            for (int m = 0; m <= hi_; ++m) {
                if (auto it = gw_.find(1); it != gw_.end()) Wb_[m][0] += it->second;
                Vec v = basis(m);
                for (int t = 1; t <= maxval_ - 1; ++t) {
                    v = apply(v, [&](int i) { return q_row(i); });
                    auto it = gw_.find(t + 1);
                    if (it == gw_.end()) continue;
                    for (int d = 0; d < band_ && m - d >= 0; ++d)
                        if (!v[m - d].is_zero()) Wb_[m][d] += it->second * v[m - d];
                }
            }
        }
        if (spec_.flavor == MobileFlavor::Arbitrary)
            for (int m = 0; m <= hi_; ++m) Wb_[m][0] = S_[m];

        SeriesSolution sol;
        sol.spec_ = spec_;
        sol.vars_ = vars_;
        sol.n_max_ = n_max_;
        sol.band_ = band_;
        sol.R_.assign(R_.begin(), R_.begin() + n_max_ + 1);
        sol.L_.assign(L_.begin(), L_.begin() + n_max_ + 1);
        if (spec_.flavor == MobileFlavor::Arbitrary)
            sol.S_.assign(S_.begin(), S_.begin() + n_max_ + 1);
        if (spec_.flavor == MobileFlavor::Eulerian ||
            spec_.flavor == MobileFlavor::PConstellation ||
            spec_.flavor == MobileFlavor::Arbitrary) {
            sol.Wb_.assign(Wb_.begin(), Wb_.begin() + n_max_ + 1);
            sol.Bb_.assign(Bb_.begin(), Bb_.begin() + n_max_ + 1);
        }
        sol.stabilization_.assign(spec_.degree + 1, 1);
        for (int d = 0; d <= spec_.degree; ++d) {
            int N = n_max_;
            Series ref = sol.R_[n_max_].degree_part(d);
            while (N > 1 && sol.R_[N - 1].degree_part(d) == ref) --N;
            sol.stabilization_[d] = N;
        }
        return sol;
    }

    WeightSpec spec_;
    int n_max_;
    SeriesVarsPtr vars_;
    Series zero_, one_;
    int maxval_ = 0, band_ = 0, hi_ = 0;
    std::map<int, Series> gw_, gb_;
    Vec R_, L_, S_;
    std::vector<std::vector<Series>> Wb_, Bb_;
};

namespace {
void require_flavor(const WeightSpec& w, MobileFlavor f) {
    if (w.flavor != f) throw BadSupport("weight spec flavor mismatch");
}
}  // namespace

SeriesSolution solve_bipartite(const WeightSpec& w, int n_max) {
    require_flavor(w, MobileFlavor::Bipartite);
    return SolverImpl(w, n_max).solve();
}

SeriesSolution solve_eulerian(const WeightSpec& w, int n_max) {
    require_flavor(w, MobileFlavor::Eulerian);
    return SolverImpl(w, n_max).solve();
}

SeriesSolution solve_p_constellation(const WeightSpec& w, int n_max) {
    require_flavor(w, MobileFlavor::PConstellation);
    return SolverImpl(w, n_max).solve();
}

SeriesSolution solve_arbitrary(const WeightSpec& w, int n_max) {
    require_flavor(w, MobileFlavor::Arbitrary);
    return SolverImpl(w, n_max).solve();
}

Series solve_limit_R(const WeightSpec& w) {
    require_flavor(w, MobileFlavor::Bipartite);
    SeriesVarsPtr vars = w.make_vars();
    Series one = Series::constant(vars, 1);
    Series R = one;
    for (int sweep = 0; sweep <= w.degree + 1; ++sweep) {
        Series sum = Series::zero(vars);
        for (const auto& [valence, unit] : w.white) {
            int k = valence / 2;
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), 2 * k - 1, k);
            Series g =
                unit ? one
                     : Series::variable(vars, vars->index_of("g" + std::to_string(valence)));
            Series pw = one;
            for (int i = 0; i < k - 1; ++i) pw = pw * R;
            pw *= mpq_class(binom);
            sum += g * pw;
        }
        Series next = (one - sum).reciprocal();
        if (next == R) return R;
        R = next;
    }
    throw InternalError("limit fixed point did not stabilize");
}

TransferOperator TransferOperator::from_solution(const SeriesSolution& sol) {
    TransferOperator op;
    op.lo = 0;
    op.hi = sol.n_max();
    Series one = Series::constant(sol.vars(), 1);
    op.rows.resize(op.hi - op.lo + 1);
    for (int i = op.lo; i <= op.hi; ++i) {
        auto& row = op.rows[i - op.lo];
        switch (sol.flavor()) {
            case MobileFlavor::Bipartite:
                row.push_back({i + 1, one});
                if (i >= 1) row.push_back({i - 1, sol.R(i)});
                break;
            case MobileFlavor::PConstellation:
                if (i + sol.spec().p - 1 <= op.hi)
                    row.push_back({i + sol.spec().p - 1, sol.B(i, i + sol.spec().p - 1)});
                if (i >= 1) row.push_back({i - 1, sol.R(i)});
                break;
            case MobileFlavor::Arbitrary:
                row.push_back({i + 1, one});
                row.push_back({i, sol.S(i)});
                if (i >= 1) row.push_back({i - 1, sol.R(i)});
                break;
            case MobileFlavor::Eulerian:
                if (i >= 1) row.push_back({i - 1, sol.R(i)});
                for (int j = i; j <= op.hi; ++j) {
                    Series b = sol.B(i, j);
                    if (!b.is_zero()) row.push_back({j, b});
                }
                break;
        }
    }
    op.max_up = 1;
    for (int i = op.lo; i <= op.hi; ++i)
        for (const auto& [j, s] : op.rows[i - op.lo]) op.max_up = std::max(op.max_up, j - i);
    return op;
}

Series q_power_element(const TransferOperator& op, int n, int m, int power) {
    if (power < 0) throw WindowTooNarrow("negative power");
    if (m < op.lo || m > op.hi || n < op.lo || n > op.hi)
        throw WindowTooNarrow("element indices outside the window");
    if (std::max(m, n) + power * op.max_up > op.hi)
        throw WindowTooNarrow("window pad smaller than power * max up-step");
    SeriesVarsPtr vars;
    for (const auto& row : op.rows)
        for (const auto& [j, s] : row)
            if (s.vars()) {
                vars = s.vars();
                break;
            }
    if (!vars) throw WindowTooNarrow("operator has no entries");
    std::vector<Series> v(op.hi - op.lo + 1, Series::zero(vars));
    v[m - op.lo] = Series::constant(vars, 1);
    for (int t = 0; t < power; ++t) {
        std::vector<Series> next(v.size(), Series::zero(vars));
        for (int i = op.lo; i <= op.hi; ++i) {
            if (v[i - op.lo].is_zero()) continue;
            for (const auto& [j, wgt] : op.rows[i - op.lo]) {
                if (j < op.lo || j > op.hi || wgt.is_zero()) continue;
                next[j - op.lo] += v[i - op.lo] * wgt;
            }
        }
        v = std::move(next);
    }
    return v[n - op.lo];
}

Series derived_series(const SeriesSolution& sol, const DerivedRequest& req) {
    auto in_range = [&](int n) {
        if (n > sol.n_max()) throw IndexBeyondStabilization("index beyond n_max");
    };
    switch (req.kind) {
        case DerivedRequest::EdgeRise: {
            if (req.n < 1) throw IndexBeyondStabilization("edge type needs n >= 1");
            in_range(req.n);
            return sol.R(req.n) - sol.R(req.n - 1);
        }
        case DerivedRequest::LogDistance: {
            if (req.n < 1) throw IndexBeyondStabilization("distance needs n >= 1");
            in_range(req.n);
            Series out = sol.R(req.n).log();
            if (req.n >= 2) out -= sol.R(req.n - 1).log();
            return out;
        }
        case DerivedRequest::OrientedEdge: {
            if (req.m < 0 || req.n < 0)
                throw IndexBeyondStabilization("edge labels are non-negative");
            in_range(std::max(req.m, req.n));
            if (req.n == req.m + 1) return derived_series(sol, {DerivedRequest::EdgeRise, req.n, 0});
            if (req.n > req.m + 1) return Series::zero(sol.vars());
            Series out = sol.B(req.n, req.m) * sol.W(req.m, req.n);
            if (req.n >= 1 && req.m >= 1)
                out -= sol.B(req.n - 1, req.m - 1) * sol.W(req.m - 1, req.n - 1);
            return out;
        }
        case DerivedRequest::EqualEdge: {
            if (req.n < 0) throw IndexBeyondStabilization("edge labels are non-negative");
            in_range(req.n);
            Series out = sol.S(req.n) * sol.S(req.n);
            if (req.n >= 1) out -= sol.S(req.n - 1) * sol.S(req.n - 1);
            return out;
        }
        case DerivedRequest::LimitW: {
            if (req.m < 0 || req.m >= sol.n_max())
                throw IndexBeyondStabilization("limit offset out of range");
            Series at_top = sol.W(sol.n_max(), sol.n_max() - req.m);
            Series below = sol.W(sol.n_max() - 1, sol.n_max() - 1 - req.m);
            if (at_top != below) throw IndexBeyondStabilization("W has not stabilized by n_max");
            return at_top;
        }
        case DerivedRequest::LimitB: {
            if (req.m < 0 || req.m >= sol.n_max())
                throw IndexBeyondStabilization("limit offset out of range");
            Series at_top = sol.B(sol.n_max() - req.m, sol.n_max());
            Series below = sol.B(sol.n_max() - 1 - req.m, sol.n_max() - 1);
            if (at_top != below) throw IndexBeyondStabilization("B has not stabilized by n_max");
            return at_top;
        }
    }
    throw InternalError("bad derived kind");
}

}  // namespace mapmob
