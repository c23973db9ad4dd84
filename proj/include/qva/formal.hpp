#pragma once

// Iota-map expansions, delta-distribution kernels, series inversion in nested
// Laurent orders, substitution rules, and the formal Taylor shift.

#include <algorithm>
#include <optional>
#include <sstream>

#include "qva/laurent.hpp"

namespace qva {

using ScalarSeries = LaurentSeries<Scalar>;

// The variable order of an iota embedding: earlier variables dominate, later
// ones expand in relatively nonnegative powers.
struct IotaDirection {
    std::vector<Var> order;

    void validate(const std::vector<Var>& vars) const {
        if (order.size() != vars.size())
            throw invalid_input("iota direction arity mismatch");
        for (Var v : vars) {
            if (std::count(order.begin(), order.end(), v) != 1)
                throw invalid_input("iota direction is not a permutation of the variables");
        }
    }
    // True when a dominates b (appears earlier).
    bool dominates(Var a, Var b) const {
        for (Var v : order) {
            if (v == a) return true;
            if (v == b) return false;
        }
        throw invalid_input("variable missing from iota direction");
    }
};

struct BinomialFactor {
    Scalar c1;
    Var v1 = Var::x1;
    Scalar c2;
    Var v2 = Var::x2;
    int exponent = 1;
};

// Embed into a larger (canonically ordered) variable set; absent variables get
// exponent zero.
template <class C>
LaurentSeries<C> promoted(const LaurentSeries<C>& a, const std::vector<Var>& vars) {
    if (a.vars() == vars) return a;
    LaurentSeries<C> out(vars);
    std::array<int, kMaxArity> map{};
    for (int i = 0; i < a.arity(); ++i) map[size_t(i)] = out.index_of(a.vars()[size_t(i)]);
    Box w = Box::full(int(vars.size()));
    Box s = Box::full(int(vars.size()));
    for (int i = 0; i < int(vars.size()); ++i) s.iv[i] = {0, 0};
    for (int i = 0; i < a.arity(); ++i) {
        w.iv[map[size_t(i)]] = a.window().iv[i];
        s.iv[map[size_t(i)]] = a.support().iv[i];
    }
    out.set_window(w);
    out.set_support(s);
    out.set_total_support(a.total_support());
    out.set_total_window(a.total_window());
    for (const auto& [e, c] : a.terms()) {
        Exp eo{0, 0, 0};
        for (int i = 0; i < a.arity(); ++i) eo[size_t(map[size_t(i)])] = e[i];
        out.set(eo, c);
    }
    return out;
}

// Coefficient extraction: fix variable v at exponent k, return the series in
// the remaining variables.
template <class C>
LaurentSeries<C> slice_at(const LaurentSeries<C>& a, Var v, int k) {
    int iv = a.index_of(v);
    std::vector<Var> rest;
    for (Var u : a.vars())
        if (u != v) rest.push_back(u);
    if (rest.empty()) throw invalid_input("cannot slice a univariate series");
    LaurentSeries<C> out(rest);
    Box w = Box::full(int(rest.size()));
    Box s = Box::empty_box(int(rest.size()));
    bool known = a.window().iv[iv].contains(k);
    for (int i = 0, j = 0; i < a.arity(); ++i) {
        if (i == iv) continue;
        w.iv[j] = known ? a.window().iv[i] : Interval{0, -1};
        s.iv[j] = a.support().iv[i];
        ++j;
    }
    out.set_window(w);
    out.set_support(s);
    out.set_total_support(a.total_support().shift(-k));
    out.set_total_window(known ? a.total_window().shift(-k) : Interval{0, -1});
    for (const auto& [e, c] : a.terms()) {
        if (e[iv] != k) continue;
        Exp eo{0, 0, 0};
        for (int i = 0, j = 0; i < a.arity(); ++i) {
            if (i == iv) continue;
            eo[size_t(j++)] = e[i];
        }
        out.set(eo, c);
    }
    return out;
}

// Res_v: coefficient of v^(-1).
template <class C>
LaurentSeries<C> residue(const LaurentSeries<C>& a, Var v) {
    return slice_at(a, v, -1);
}

// Expansion of one binomial factor in the given direction, on (at least) the
// requested box.
inline ScalarSeries expand_binomial_factor(const BinomialFactor& f, const IotaDirection& dir,
                                           const std::vector<Var>& vars, const Box& box) {
    if (f.v1 == f.v2) throw invalid_input("binomial factor needs two distinct variables");
    int n = f.exponent;
    if (n < 0 && (f.c1.is_zero() || f.c2.is_zero()))
        throw invalid_input("negative power of a binomial with a zero coefficient");
    ScalarSeries out(vars);
    bool first_dominates = dir.dominates(f.v1, f.v2);
    Scalar cd = first_dominates ? f.c1 : f.c2;
    Scalar co = first_dominates ? f.c2 : f.c1;
    Var vd = first_dominates ? f.v1 : f.v2;
    Var vo = first_dominates ? f.v2 : f.v1;
    int id = out.index_of(vd), io = out.index_of(vo);

    Box support = Box::empty_box(int(vars.size()));
    for (int i = 0; i < int(vars.size()); ++i) support.iv[i] = {0, 0};
    support.iv[id] = (n >= 0) ? Interval{0, n} : Interval{kNegInf, n};
    support.iv[io] = (n >= 0) ? Interval{0, n} : Interval{0, kPosInf};
    out.set_support(support);

    long long i_lo = std::max(0, box.iv[io].lo);
    long long i_hi = n >= 0 ? std::min<long long>(n, box.iv[io].hi)
                            : (long long)box.iv[io].hi;
    if (n < 0) {
        // Dominant exponent n - i must stay inside the requested range.
        if (box.iv[id].lo > kNegInf) i_hi = std::min(i_hi, (long long)n - box.iv[id].lo);
        if (i_hi >= kPosInf) throw window_too_small("iota expansion needs a finite window");
    }
    for (long long i = i_lo; i <= i_hi; ++i) {
        Scalar coef = binomial(n, i) * cd.pow(n - i) * co.pow(i);
        if (coef.is_zero()) continue;
        Exp e{0, 0, 0};
        e[size_t(id)] = int(n - i);
        e[size_t(io)] = int(i);
        out.set(e, coef);
    }
    // Terms were generated for the whole requested box (cells off the support
    // line are exact zeros), so the factor is authoritative there.
    out.set_window(box);
    out.set_total_support({n, n});
    out.set_total_window({kNegInf, kPosInf});
    return out;
}

// iota expansion of  prod_k (c1 v1 + c2 v2)^(n_k) * base  in direction `dir`,
// authoritative on `window`.
inline ScalarSeries iota_expand(const std::vector<BinomialFactor>& factors,
                                const ScalarSeries& base, const IotaDirection& dir,
                                const Box& window) {
    dir.validate(base.vars());
    if (!window.is_finite()) {
        bool all_poly = std::all_of(factors.begin(), factors.end(),
                                    [](const BinomialFactor& f) { return f.exponent >= 0; });
        if (!all_poly) throw window_too_small("iota expansion needs a finite window");
    }
    // Suffix support sums so each partial product is computed on the range the
    // remaining factors still need.
    std::vector<Box> fsup(factors.size(), Box::full(base.arity()));
    for (size_t k = 0; k < factors.size(); ++k) {
        // Probe the factor's support via a throwaway expansion box.
        ScalarSeries probe(base.vars());
        const BinomialFactor& f = factors[k];
        Box s = Box::empty_box(base.arity());
        for (int i = 0; i < base.arity(); ++i) s.iv[i] = {0, 0};
        bool first_dom = dir.dominates(f.v1, f.v2);
        int id = probe.index_of(first_dom ? f.v1 : f.v2);
        int io = probe.index_of(first_dom ? f.v2 : f.v1);
        s.iv[id] = f.exponent >= 0 ? Interval{0, f.exponent} : Interval{kNegInf, f.exponent};
        s.iv[io] = f.exponent >= 0 ? Interval{0, f.exponent} : Interval{0, kPosInf};
        fsup[k] = s;
    }
    std::vector<Box> suffix(factors.size() + 1, Box::empty_box(base.arity()));
    for (int i = 0; i < base.arity(); ++i) suffix[factors.size()].iv[i] = {0, 0};
    for (size_t k = factors.size(); k-- > 0;)
        suffix[k] = suffix[k + 1].plus(fsup[k]);

    ScalarSeries acc = base.restricted(needed_window(window, suffix[0]));
    for (size_t k = 0; k < factors.size(); ++k) {
        Box target = needed_window(window, suffix[k + 1]);
        Box fbox = needed_window(target, acc.support()).intersect(fsup[k]);
        ScalarSeries fac = expand_binomial_factor(factors[k], dir, base.vars(), fbox);
        acc = multiply(acc, fac, target);
    }
    return acc;
}

inline ScalarSeries iota_expand(const std::vector<BinomialFactor>& factors,
                                const std::vector<Var>& vars, const IotaDirection& dir,
                                const Box& window) {
    return iota_expand(factors, ScalarSeries::constant(vars, Scalar(1)), dir, window);
}

// Inversion in C((inner))((outer)): write f = outer^s (u(inner) + P), invert
// u as a Laurent series in inner, then solve slice by slice in outer.
template <class C>
LaurentSeries<C> series_invert(const LaurentSeries<C>& f, Var inner, Var outer,
                               const Box& window) {
    if (!f.has_terms()) throw invalid_input("series_invert: zero input");
    if (!f.fully_known()) throw window_too_small("series_invert requires a fully known input");
    if (!window.is_finite()) throw window_too_small("series_invert needs a finite window");
    int ii = f.index_of(inner), io = f.index_of(outer);

    int s = kPosInf, fin_lo = kPosInf, fin_hi = kNegInf, fout_hi = kNegInf;
    for (const auto& [e, c] : f.terms()) {
        s = std::min(s, e[io]);
        fout_hi = std::max(fout_hi, e[io]);
        fin_lo = std::min(fin_lo, e[ii]);
        fin_hi = std::max(fin_hi, e[ii]);
    }
    const Interval req_out = window.iv[io];
    const Interval req_in = window.iv[ii];
    int slices = std::max(0, req_out.hi + s) + 1; // outer slices -s .. req_out.hi

    // Inner working range: every convolution step can widen needs by the inner
    // spread of f and of u^-1's head, so pad generously.
    int spread = std::max({std::abs(fin_lo), std::abs(fin_hi), 1});
    int pad = (slices + 2) * 2 * spread + 2;
    Box iw = Box::full(1);
    iw.iv[0] = {req_in.lo - pad, req_in.hi + pad};

    // f's outer slices as univariate inner series.
    std::vector<LaurentSeries<C>> fs;
    for (int j = s; j <= fout_hi; ++j) {
        LaurentSeries<C> sl = LaurentSeries<C>::exact({inner});
        for (const auto& [e, c] : f.terms())
            if (e[io] == j) sl.set({e[ii], 0, 0}, c);
        fs.push_back(sl);
    }
    const LaurentSeries<C>& u = fs[0];
    if (!u.has_terms())
        throw invalid_input("series_invert: lowest outer slice vanishes unexpectedly");

    // u^{-1} by geometric series: u = c * inner^t * (1 + h), h with positive
    // inner exponents.
    int t = u.terms().begin()->first[0];
    C head = u.terms().begin()->second;
    Scalar head_inv = scalar_inverse_of(head);
    LaurentSeries<C> h = LaurentSeries<C>::exact({inner});
    for (const auto& [e, c] : u.terms()) {
        if (e[0] == t) continue;
        h.set({e[0] - t, 0, 0}, c * head_inv);
    }
    LaurentSeries<C> uinv(std::vector<Var>{inner}, iw, Box{1, {Interval{-t, kPosInf}}});
    uinv.set({-t, 0, 0}, unit_like(head, head_inv));
    if (h.has_terms()) {
        int hmin = h.terms().begin()->first[0];
        LaurentSeries<C> pw = LaurentSeries<C>::constant({inner}, unit_like(head, Scalar(1)));
        int kmax = (iw.iv[0].hi + t) / std::max(1, hmin) + 1;
        for (int k = 1; k <= kmax; ++k) {
            pw = multiply(pw, h, iw);
            LaurentSeries<C> term = (k % 2 ? -pw : pw).shifted({-t, 0, 0}).scaled(head_inv);
            uinv = uinv + term.restricted(iw);
            uinv.set_support(Box{1, {Interval{-t, kPosInf}}});
            uinv.set_window(iw);
        }
    }

    // Solve (u + P) * g~ = 1 slice by slice: g~_0 = u^{-1},
    // g~_m = -u^{-1} * sum_{k>=1} f_(s+k) g~_(m-k).
    std::vector<LaurentSeries<C>> g(size_t(slices),
                                    LaurentSeries<C>(std::vector<Var>{inner}, iw, Box::empty_box(1)));
    g[0] = uinv;
    for (int m = 1; m < slices; ++m) {
        LaurentSeries<C> acc(std::vector<Var>{inner}, iw, Box::empty_box(1));
        for (int k = 1; k <= m && k < int(fs.size()); ++k)
            acc = acc + multiply(fs[size_t(k)], g[size_t(m - k)], iw);
        g[size_t(m)] = -multiply(uinv, acc, iw);
    }

    LaurentSeries<C> out(f.vars(), window, Box::full(f.arity()));
    Box support = Box::full(f.arity());
    support.iv[io] = {-s, kPosInf};
    for (int i = 0; i < f.arity(); ++i)
        if (i != io && i != ii) support.iv[i] = {0, 0};
    out.set_support(support);
    Interval inner_known = iw.iv[0];
    for (int m = 0; m < slices; ++m) {
        int oe = m - s;
        if (!req_out.contains(oe)) continue;
        inner_known = inner_known.intersect(g[size_t(m)].window().iv[0]);
        for (const auto& [e, c] : g[size_t(m)].terms()) {
            Exp eo{0, 0, 0};
            eo[size_t(ii)] = e[0];
            eo[size_t(io)] = oe;
            if (window.contains(eo)) out.set(eo, c);
        }
    }
    Box w = window;
    w.iv[ii] = w.iv[ii].intersect(inner_known);
    out.set_window(w);
    const Interval fts = f.total_support();
    if (!fts.empty() && fts.lo == fts.hi)
        out.set_total_support({-fts.lo, -fts.lo}); // homogeneous input
    else
        out.set_total_support({kNegInf, kPosInf});
    out.set_total_window({kNegInf, kPosInf});
    return out;
}

// Hooks used by series_invert for scalar coefficients; module-valued series
// are never inverted.
inline Scalar scalar_inverse_of(const Scalar& c) { return c.inverse(); }
inline Scalar unit_like(const Scalar&, const Scalar& v) { return v; }

// (d/dx2)^j of x1^{-1} delta(alpha x2 / x1): coefficient of x1^{-m-1} x2^{m-j}
// is alpha^m * m(m-1)...(m-j+1).
inline ScalarSeries delta_coefficients(const Scalar& alpha, int j, const Box& window,
                                       Var va = Var::x1, Var vb = Var::x2) {
    if (alpha.is_zero()) throw invalid_input("delta at zero is undefined");
    if (j < 0) throw invalid_input("negative derivative order");
    std::vector<Var> vars{std::min(va, vb), std::max(va, vb)};
    ScalarSeries out(vars, window, Box::full(2));
    int ia = out.index_of(va), ib = out.index_of(vb);
    if (!window.iv[ia].is_finite() && !window.iv[ib].is_finite())
        throw window_too_small("delta expansion needs a finite window");
    // m ranges so that -m-1 lies in the va-window and m-j in the vb-window.
    long long mlo = std::max<long long>(-(long long)window.iv[ia].hi - 1,
                                        (long long)window.iv[ib].lo + j);
    long long mhi = std::min<long long>(-(long long)window.iv[ia].lo - 1,
                                        (long long)window.iv[ib].hi + j);
    for (long long m = mlo; m <= mhi; ++m) {
        Scalar c = alpha.pow(m) * falling_factorial(m, j);
        if (c.is_zero()) continue;
        Exp e{0, 0, 0};
        e[size_t(ia)] = int(-m - 1);
        e[size_t(ib)] = int(m - j);
        out.set(e, c);
    }
    out.set_total_support({-1 - j, -1 - j});
    out.set_total_window({kNegInf, kPosInf});
    return out;
}

// The general three-variable delta kernel va^{-1} delta((c1 vb + c2 vc)/va),
// with the numerator power expanded in nonnegative powers of the second
// summand.
inline ScalarSeries delta_kernel3(Var va, const Scalar& c1, Var vb, const Scalar& c2, Var vc,
                                  const Box& window) {
    std::vector<Var> vars{va, vb, vc};
    std::sort(vars.begin(), vars.end());
    ScalarSeries out(vars, window, Box::full(3));
    int ia = out.index_of(va), ib = out.index_of(vb), ic = out.index_of(vc);
    if (!window.is_finite()) throw window_too_small("delta expansion needs a finite window");
    for (long long m = -(long long)window.iv[ia].hi - 1; m <= -(long long)window.iv[ia].lo - 1;
         ++m) {
        long long ilo = std::max(0, window.iv[ic].lo);
        long long ihi = window.iv[ic].hi;
        if (m >= 0) ihi = std::min(ihi, m);
        for (long long i = ilo; i <= ihi; ++i) {
            if (!window.iv[ib].contains(int(m - i))) continue;
            Scalar coef = binomial(m, i) * c1.pow(m - i) * c2.pow(i);
            if (coef.is_zero()) continue;
            Exp e{0, 0, 0};
            e[size_t(ia)] = int(-m - 1);
            e[size_t(ib)] = int(m - i);
            e[size_t(ic)] = int(i);
            out.add_term(e, coef);
        }
    }
    out.set_total_support({-1, -1});
    out.set_total_window({kNegInf, kPosInf});
    return out;
}

struct CheckOutcome {
    bool pass = true;
    std::string detail;
    std::optional<Exp> where;
};

// x0^{-1}d((x1-a x2)/x0) - x0^{-1}d((-a x2+x1)/x0) = x1^{-1}d((a x2+x0)/x1).
inline CheckOutcome verify_delta_identity(const Scalar& alpha, const Box& window) {
    if (alpha.is_zero()) throw invalid_input("delta at zero is undefined");
    ScalarSeries lhs1 = delta_kernel3(Var::x0, Scalar(1), Var::x1, -alpha, Var::x2, window);
    ScalarSeries lhs2 = delta_kernel3(Var::x0, -alpha, Var::x2, Scalar(1), Var::x1, window);
    ScalarSeries rhs = delta_kernel3(Var::x1, alpha, Var::x2, Scalar(1), Var::x0, window);
    auto diff = first_difference(lhs1 - lhs2, rhs, window);
    CheckOutcome r;
    if (diff) {
        r.pass = false;
        std::ostringstream os;
        os << "delta identity fails at (x0,x1,x2) exponent (" << (*diff)[0] << "," << (*diff)[1]
           << "," << (*diff)[2] << ")";
        r.detail = os.str();
        r.where = diff;
    }
    return r;
}

enum class DeltaSubstitutionForm {
    // x0^{-1} delta((x1 - a x2)/x0) * g  ->  same delta * g(x0, x0 + a x2, x2)
    NumeratorFirst,
    // x1^{-1} delta((a x2 + x0)/x1) * g  ->  same delta * g(x0, a x2 + x0, x2)
    SingleDelta,
    // x0^{-1} delta((-a x2 + x1)/x0) * g ->  same delta * g(x0, a x2 + x0, x2),
    // valid only when g has no negative powers of x1.
    NumeratorSecond,
};

template <class C>
LaurentSeries<C> delta_substitute(const LaurentSeries<C>& g, DeltaSubstitutionForm form,
                                  const Scalar& alpha, const Box& out_window) {
    if (alpha.is_zero()) throw invalid_input("delta at zero is undefined");
    int ix1 = g.index_of(Var::x1);
    if (form == DeltaSubstitutionForm::NumeratorSecond) {
        for (const auto& [e, c] : g.terms())
            if (e[ix1] < 0 && !cv_is_zero(c))
                throw invalid_input(
                    "substitution form requires nonnegative powers of x1");
    }
    std::vector<Var> out_vars{Var::x0, Var::x2};
    if (form == DeltaSubstitutionForm::NumeratorFirst)
        return substitute_binomial(g, Var::x1, Scalar(1), Var::x0, alpha, Var::x2, out_window,
                                   out_vars);
    return substitute_binomial(g, Var::x1, alpha, Var::x2, Scalar(1), Var::x0, out_window,
                               out_vars);
}

// e^{t * v2 * d/dx} s  =  s(x + t v2), expanded in nonnegative powers of v2.
inline ScalarSeries taylor_shift(const ScalarSeries& s, const Scalar& t, Var v2,
                                 const Box& out_window) {
    if (s.arity() != 1) throw invalid_input("taylor_shift expects a univariate series");
    Var x = s.vars()[0];
    std::vector<Var> out_vars{std::min(x, v2), std::max(x, v2)};
    return substitute_binomial(s, x, Scalar(1), x, t, v2, out_window, out_vars);
}

} // namespace qva
