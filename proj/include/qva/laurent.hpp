#pragma once

// Sparse multivariate Laurent polynomials / truncated Laurent series with
// explicit truncation windows.
//
// Every series value carries two boxes:
//   support: a promise that the true (possibly doubly infinite) object has no
//            terms outside it;
//   window:  the box on which the stored coefficients are authoritative.
// Arithmetic computes the largest output window on which the result is exact,
// given the operands' windows and supports.  Verifiers only assert inside
// windows, so every reported comparison is an exact statement.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qva/scalar.hpp"

namespace qva {

enum class Var : int { x = 0, x0 = 1, x1 = 2, x2 = 3, x3 = 4 };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::x0: return "x0";
        case Var::x1: return "x1";
        case Var::x2: return "x2";
        case Var::x3: return "x3";
    }
    return "?";
}

inline std::optional<Var> var_from_name(const std::string& s) {
    for (Var v : {Var::x, Var::x0, Var::x1, Var::x2, Var::x3})
        if (s == var_name(v)) return v;
    return std::nullopt;
}

constexpr int kMaxArity = 3;
using Exp = std::array<int, kMaxArity>;

struct Interval {
    int lo = kNegInf;
    int hi = kPosInf;
    bool empty() const { return lo > hi; }
    bool contains(int e) const { return e >= lo && e <= hi; }
    bool contains(const Interval& o) const { return o.empty() || (lo <= o.lo && o.hi <= hi); }
    Interval intersect(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
    Interval hull(const Interval& o) const {
        if (empty()) return o;
        if (o.empty()) return *this;
        return {std::min(lo, o.lo), std::max(hi, o.hi)};
    }
    Interval plus(const Interval& o) const {
        if (empty() || o.empty()) return {0, -1};
        return {add_bound(lo, o.lo), add_bound(hi, o.hi)};
    }
    Interval shift(int k) const { return empty() ? *this : Interval{add_bound(lo, k), add_bound(hi, k)}; }
    bool is_finite() const { return empty() || (lo > kNegInf && hi < kPosInf); }
};

struct Box {
    int arity = 0;
    std::array<Interval, kMaxArity> iv{};

    static Box full(int arity) {
        Box b;
        b.arity = arity;
        return b;
    }
    static Box empty_box(int arity) {
        Box b;
        b.arity = arity;
        for (int i = 0; i < arity; ++i) b.iv[i] = {0, -1};
        return b;
    }
    static Box cube(int arity, int lo, int hi) {
        Box b;
        b.arity = arity;
        for (int i = 0; i < arity; ++i) b.iv[i] = {lo, hi};
        return b;
    }
    bool contains(const Exp& e) const {
        for (int i = 0; i < arity; ++i)
            if (!iv[i].contains(e[i])) return false;
        return true;
    }
    bool contains(const Box& o) const {
        for (int i = 0; i < arity; ++i)
            if (!iv[i].contains(o.iv[i])) return false;
        return true;
    }
    bool is_empty() const {
        for (int i = 0; i < arity; ++i)
            if (iv[i].empty()) return true;
        return false;
    }
    bool is_finite() const {
        for (int i = 0; i < arity; ++i)
            if (!iv[i].is_finite()) return false;
        return true;
    }
    Box intersect(const Box& o) const {
        Box b = *this;
        for (int i = 0; i < arity; ++i) b.iv[i] = iv[i].intersect(o.iv[i]);
        return b;
    }
    Box hull(const Box& o) const {
        Box b = *this;
        for (int i = 0; i < arity; ++i) b.iv[i] = iv[i].hull(o.iv[i]);
        return b;
    }
    Box plus(const Box& o) const {
        Box b = *this;
        for (int i = 0; i < arity; ++i) b.iv[i] = iv[i].plus(o.iv[i]);
        return b;
    }
};

// Exponent range a factor must be known on so that (factor * other) is
// authoritative on `requested`, given a support box for the other operand:
// per variable, [req.lo - other.hi, req.hi - other.lo].
inline Box needed_window(const Box& requested, const Box& other_support) {
    Box b = requested;
    for (int i = 0; i < b.arity; ++i) {
        const Interval& w = requested.iv[i];
        const Interval& s = other_support.iv[i];
        if (s.empty()) continue;
        int lo = (w.lo <= kNegInf || s.hi >= kPosInf) ? kNegInf : w.lo - s.hi;
        int hi = (w.hi >= kPosInf || s.lo <= kNegInf) ? kPosInf : w.hi - s.lo;
        b.iv[i] = {lo, hi};
    }
    return b;
}

// Coefficient-space hooks.  Scalar specializations here; module-valued
// coefficients provide their own overloads.
inline bool cv_is_zero(const Scalar& s) { return s.is_zero(); }
inline bool cv_is_lossy(const Scalar&) { return false; }

// In addition to the per-variable boxes, every series tracks the *total
// degree* (sum of exponents) of its terms: a support slab (promise) and a
// window slab (knowledge).  Delta kernels, homogeneous locality witnesses and
// their inverses are concentrated on a single total degree, and tracking it is
// what keeps windows exact when such factors multiply partially-known data.
template <class C>
class LaurentSeries {
public:
    using coeff_type = C;
    using term_map = std::map<Exp, C>;

    LaurentSeries() = default;
    explicit LaurentSeries(std::vector<Var> vars)
        : vars_(std::move(vars)), window_(Box::full(int(vars_.size()))),
          support_(Box::full(int(vars_.size()))) {
        check_vars();
    }
    LaurentSeries(std::vector<Var> vars, Box window, Box support)
        : vars_(std::move(vars)), window_(window), support_(support) {
        check_vars();
    }

    // A fully-known value (window unbounded) with finite support.
    static LaurentSeries exact(std::vector<Var> vars) {
        LaurentSeries s(std::move(vars));
        s.support_ = Box::empty_box(s.arity());
        s.total_support_ = {0, -1};
        return s;
    }
    static LaurentSeries constant(std::vector<Var> vars, C value) {
        LaurentSeries s = exact(std::move(vars));
        s.set({0, 0, 0}, std::move(value));
        return s;
    }

    int arity() const { return int(vars_.size()); }
    const std::vector<Var>& vars() const { return vars_; }
    int index_of(Var v) const {
        for (int i = 0; i < arity(); ++i)
            if (vars_[size_t(i)] == v) return i;
        throw invalid_input(std::string("variable ") + var_name(v) + " not present");
    }
    const Box& window() const { return window_; }
    const Box& support() const { return support_; }
    const Interval& total_window() const { return total_window_; }
    const Interval& total_support() const { return total_support_; }
    const term_map& terms() const { return terms_; }
    bool has_terms() const { return !terms_.empty(); }

    void set_window(const Box& w) { window_ = w; }
    void set_support(const Box& s) { support_ = s; }
    void set_total_window(const Interval& t) { total_window_ = t; }
    void set_total_support(const Interval& t) { total_support_ = t; }

    int total_of(const Exp& e) const {
        int t = 0;
        for (int i = 0; i < arity(); ++i) t += e[i];
        return t;
    }

    void set(const Exp& e, C c) {
        if (cv_is_zero(c) && !cv_is_lossy(c)) terms_.erase(e);
        else {
            terms_[e] = std::move(c);
            grow_support(e);
        }
    }
    void add_term(const Exp& e, const C& c) {
        if (cv_is_zero(c) && !cv_is_lossy(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) terms_.emplace(e, c);
        else {
            it->second = it->second + c;
            if (cv_is_zero(it->second) && !cv_is_lossy(it->second)) terms_.erase(it);
        }
        grow_support(e);
    }
    C coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C{} : it->second;
    }
    bool known_at(const Exp& e) const {
        return window_.contains(e) && total_window_.contains(total_of(e));
    }

    LaurentSeries restricted(const Box& w) const {
        LaurentSeries r(vars_, window_.intersect(w), support_);
        r.total_window_ = total_window_;
        r.total_support_ = total_support_;
        for (const auto& [e, c] : terms_)
            if (r.window_.contains(e)) r.terms_.emplace(e, c);
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    template <class S>
    LaurentSeries scaled(const S& s) const {
        LaurentSeries r(vars_, window_, support_);
        r.total_window_ = total_window_;
        r.total_support_ = total_support_;
        if (cv_is_zero_generic(s)) return r;
        for (const auto& [e, c] : terms_) {
            C v = c * s;
            if (!cv_is_zero(v) || cv_is_lossy(v)) r.terms_.emplace(e, std::move(v));
        }
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        a.require_same_vars(b);
        LaurentSeries r(a.vars_, a.window_.intersect(b.window_), a.support_.hull(b.support_));
        r.total_window_ = a.total_window_.intersect(b.total_window_);
        r.total_support_ = a.total_support_.hull(b.total_support_);
        for (const auto& [e, c] : a.terms_)
            if (r.window_.contains(e)) r.add_term(e, c);
        for (const auto& [e, c] : b.terms_)
            if (r.window_.contains(e)) r.add_term(e, c);
        return r;
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + (-b);
    }

    // Multiply by a monomial: exact shift of terms, window and support.
    LaurentSeries shifted(const Exp& k) const {
        LaurentSeries r(vars_, Box::full(arity()), Box::full(arity()));
        int kt = 0;
        for (int i = 0; i < arity(); ++i) {
            r.window_.iv[i] = window_.iv[i].shift(k[i]);
            r.support_.iv[i] = support_.iv[i].shift(k[i]);
            kt += k[i];
        }
        r.total_window_ = total_window_.shift(kt);
        r.total_support_ = total_support_.shift(kt);
        for (const auto& [e, c] : terms_) {
            Exp e2 = e;
            for (int i = 0; i < arity(); ++i) e2[i] += k[i];
            r.terms_.emplace(e2, c);
        }
        return r;
    }

    // Partial derivative; commutes with expansions.
    LaurentSeries derivative(Var v) const {
        int ix = index_of(v);
        LaurentSeries r(vars_, Box::full(arity()), Box::full(arity()));
        r.window_ = window_;
        r.support_ = support_;
        r.window_.iv[ix] = window_.iv[ix].shift(-1);
        r.support_.iv[ix] = support_.iv[ix].shift(-1);
        r.total_window_ = total_window_.shift(-1);
        r.total_support_ = total_support_.shift(-1);
        for (const auto& [e, c] : terms_) {
            if (e[ix] == 0) continue;
            Exp e2 = e;
            e2[ix] -= 1;
            C v2 = c * Scalar((long long)e[ix]);
            if (!cv_is_zero(v2) || cv_is_lossy(v2)) r.terms_.emplace(e2, std::move(v2));
        }
        return r;
    }

    bool is_zero_on_window() const {
        for (const auto& [e, c] : terms_)
            if (!cv_is_zero(c)) return false;
        return true;
    }

    bool fully_known() const {
        if (!window_.contains(support_)) return false;
        return total_window_.contains(total_support_);
    }

private:
    template <class S>
    static bool cv_is_zero_generic(const S& s) { return cv_is_zero(s); }

    void check_vars() const {
        if (vars_.empty() || vars_.size() > kMaxArity)
            throw invalid_input("series arity must be between 1 and 3");
        for (size_t i = 1; i < vars_.size(); ++i)
            if (!(int(vars_[i - 1]) < int(vars_[i])))
                throw invalid_input("series variables must be strictly increasing");
    }
    void require_same_vars(const LaurentSeries& o) const {
        if (vars_ != o.vars_) throw invalid_input("variable mismatch in series operation");
    }
    void grow_support(const Exp& e) {
        int t = 0;
        for (int i = 0; i < arity(); ++i) {
            t += e[i];
            if (support_.iv[i].empty()) support_.iv[i] = {e[i], e[i]};
            else support_.iv[i] = support_.iv[i].hull({e[i], e[i]});
        }
        if (total_support_.empty()) total_support_ = {t, t};
        else total_support_ = total_support_.hull({t, t});
    }

    std::vector<Var> vars_;
    term_map terms_;
    Box window_;
    Box support_;
    Interval total_window_{kNegInf, kPosInf};
    Interval total_support_{kNegInf, kPosInf};
};

namespace detail {

// A rectangular piece of an operand's unknown region: per-variable extents
// plus a total-degree extent.
struct UnknownSlab {
    Box box;
    Interval total;

    // Propagate the total constraint into the variable extents and back.
    void tighten() {
        const int r = box.arity;
        for (int pass = 0; pass < 2; ++pass) {
            int slo = 0, shi = 0;
            for (int i = 0; i < r; ++i) {
                slo = add_bound(slo, box.iv[i].lo);
                shi = add_bound(shi, box.iv[i].hi);
            }
            total = total.intersect({slo, shi});
            if (total.empty()) return;
            for (int i = 0; i < r; ++i) {
                // others' sum range = [slo - lo_i, shi - hi_i]
                int others_lo = (slo <= kNegInf || box.iv[i].lo <= kNegInf) ? kNegInf
                                                                            : slo - box.iv[i].lo;
                int others_hi = (shi >= kPosInf || box.iv[i].hi >= kPosInf) ? kPosInf
                                                                            : shi - box.iv[i].hi;
                int lo = (total.lo <= kNegInf || others_hi >= kPosInf) ? kNegInf
                                                                       : total.lo - others_hi;
                int hi = (total.hi >= kPosInf || others_lo <= kNegInf) ? kPosInf
                                                                       : total.hi - others_lo;
                box.iv[i] = box.iv[i].intersect({lo, hi});
                if (box.iv[i].empty()) { total = {0, -1}; return; }
            }
        }
    }
    bool empty() const { return total.empty() || box.is_empty(); }
};

template <class C>
void collect_unknown_slabs(const LaurentSeries<C>& x, std::vector<UnknownSlab>& out) {
    const int r = x.arity();
    const Box& s = x.support();
    const Box& w = x.window();
    for (int i = 0; i < r; ++i) {
        if (s.iv[i].empty()) return; // empty support: nothing unknown
        if (s.iv[i].lo < w.iv[i].lo) {
            UnknownSlab sl{s, x.total_support()};
            sl.box.iv[i] = {s.iv[i].lo, w.iv[i].lo - 1};
            sl.tighten();
            if (!sl.empty()) out.push_back(sl);
        }
        if (s.iv[i].hi > w.iv[i].hi) {
            UnknownSlab sl{s, x.total_support()};
            sl.box.iv[i] = {w.iv[i].hi + 1, s.iv[i].hi};
            sl.tighten();
            if (!sl.empty()) out.push_back(sl);
        }
    }
    const Interval ts = x.total_support();
    const Interval tw = x.total_window();
    if (ts.lo < tw.lo) {
        UnknownSlab sl{s, {ts.lo, tw.lo - 1}};
        sl.tighten();
        if (!sl.empty()) out.push_back(sl);
    }
    if (ts.hi > tw.hi) {
        UnknownSlab sl{s, {tw.hi + 1, ts.hi}};
        sl.tighten();
        if (!sl.empty()) out.push_back(sl);
    }
}

inline long long width_of(const Interval& v) {
    if (v.empty()) return 0;
    long long lo = std::max(v.lo, -(1 << 27));
    long long hi = std::min(v.hi, 1 << 27);
    return hi - lo + 1;
}

} // namespace detail

// Product with window-honest truncation.  The output knowledge region is the
// largest sub-box (plus total-degree slab) of `requested` whose coefficients
// receive no contribution from either operand's unknown region.
template <class CA, class CB>
auto multiply(const LaurentSeries<CA>& a, const LaurentSeries<CB>& b, const Box& requested)
    -> LaurentSeries<decltype(std::declval<CA>() * std::declval<CB>())> {
    using CR = decltype(std::declval<CA>() * std::declval<CB>());
    if (a.vars() != b.vars()) throw invalid_input("variable mismatch in multiply");
    const int r = a.arity();

    Box window = requested;
    Interval total_window{kNegInf, kPosInf};

    std::vector<detail::UnknownSlab> contaminated;
    {
        std::vector<detail::UnknownSlab> sa, sb;
        detail::collect_unknown_slabs(a, sa);
        detail::collect_unknown_slabs(b, sb);
        for (const auto& sl : sa) {
            detail::UnknownSlab c{sl.box.plus(b.support()), sl.total.plus(b.total_support())};
            if (!c.empty()) contaminated.push_back(c);
        }
        for (const auto& sl : sb) {
            detail::UnknownSlab c{sl.box.plus(a.support()), sl.total.plus(a.total_support())};
            if (!c.empty()) contaminated.push_back(c);
        }
    }

    for (const auto& c : contaminated) {
        // Reach of the contaminated region inside the current knowledge box.
        bool disjoint = false;
        for (int i = 0; i < r; ++i)
            if (c.box.iv[i].intersect(window.iv[i]).empty()) { disjoint = true; break; }
        if (disjoint) continue;
        Interval implied{0, 0};
        for (int i = 0; i < r; ++i) implied = implied.plus(window.iv[i]);
        implied = implied.intersect(total_window);
        if (c.total.intersect(implied).empty()) continue;

        // Exclude along the coordinate (a variable or the total) that keeps
        // the most knowledge; conservative when the region covers everything.
        long long best_keep = -1;
        int best_var = -1;
        bool best_side_above = false, best_is_total = false;
        for (int i = 0; i < r; ++i) {
            const Interval& win = window.iv[i];
            const Interval& ci = c.box.iv[i];
            if (ci.hi < win.hi) {
                long long keep = detail::width_of({std::max(win.lo, ci.hi + 1), win.hi});
                if (keep > best_keep) { best_keep = keep; best_var = i; best_side_above = true; best_is_total = false; }
            }
            if (ci.lo > win.lo) {
                long long keep = detail::width_of({win.lo, std::min(win.hi, ci.lo - 1)});
                if (keep > best_keep) { best_keep = keep; best_var = i; best_side_above = false; best_is_total = false; }
            }
        }
        {
            if (c.total.hi < implied.hi) {
                long long keep = detail::width_of({std::max(implied.lo, c.total.hi + 1), implied.hi});
                if (keep > best_keep) { best_keep = keep; best_is_total = true; best_side_above = true; }
            }
            if (c.total.lo > implied.lo) {
                long long keep = detail::width_of({implied.lo, std::min(implied.hi, c.total.lo - 1)});
                if (keep > best_keep) { best_keep = keep; best_is_total = true; best_side_above = false; }
            }
        }
        if (best_keep < 0) {
            // Region covers the whole knowledge box: nothing is authoritative.
            window = Box::empty_box(r);
            break;
        }
        if (best_is_total) {
            if (best_side_above) total_window.lo = std::max(total_window.lo, c.total.hi + 1);
            else total_window.hi = std::min(total_window.hi, c.total.lo - 1);
        } else if (best_side_above) {
            window.iv[best_var].lo = std::max(window.iv[best_var].lo, c.box.iv[best_var].hi + 1);
        } else {
            window.iv[best_var].hi = std::min(window.iv[best_var].hi, c.box.iv[best_var].lo - 1);
        }
    }

    LaurentSeries<CR> out(a.vars(), window, a.support().plus(b.support()));
    out.set_total_window(total_window);
    out.set_total_support(a.total_support().plus(b.total_support()));
    if (window.is_empty()) return out;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exp e{0, 0, 0};
            bool inside = true;
            int tot = 0;
            for (int i = 0; i < r; ++i) {
                e[i] = ea[i] + eb[i];
                tot += e[i];
                if (!window.iv[i].contains(e[i])) { inside = false; break; }
            }
            if (!inside || !total_window.contains(tot)) continue;
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

// Substitute `from^p -> sum_i binom(p,i) (c1*v1)^(p-i) (c2*v2)^i`, i.e. the
// formal substitution from := c1*v1 + c2*v2 expanded in nonnegative powers of
// the SECOND summand.  v1 may coincide with an existing variable of `a`; v2
// must be fresh or existing-but-unused except as target.  Requires a fully
// known input.
template <class C>
LaurentSeries<C> substitute_binomial(const LaurentSeries<C>& a, Var from, const Scalar& c1,
                                     Var v1, const Scalar& c2, Var v2, const Box& requested,
                                     const std::vector<Var>& out_vars) {
    if (!a.fully_known())
        throw window_too_small("substitute_binomial requires a fully known input");
    if (c1.is_zero() || c2.is_zero())
        throw invalid_input("substitute_binomial: zero summand coefficient");
    LaurentSeries<C> out(out_vars, requested, Box::full(int(out_vars.size())));
    int ifrom = a.index_of(from);
    int ov1 = out.index_of(v1), ov2 = out.index_of(v2);
    if (ov1 == ov2) throw invalid_input("substitute_binomial: summand variables coincide");

    // Map the untouched variables of `a` to output slots.
    std::array<int, kMaxArity> map{};
    for (int i = 0; i < a.arity(); ++i) {
        if (i == ifrom) { map[size_t(i)] = -1; continue; }
        map[size_t(i)] = out.index_of(a.vars()[size_t(i)]);
    }

    // Output support: v2 collects nonnegative expansion powers; v1 collects
    // p - i, unbounded below as soon as the source had a negative exponent.
    {
        Box s = Box::empty_box(int(out_vars.size()));
        for (int i = 0; i < int(out_vars.size()); ++i) s.iv[i] = {0, 0};
        for (int i = 0; i < a.arity(); ++i)
            if (map[size_t(i)] >= 0) s.iv[map[size_t(i)]] = a.support().iv[i];
        const Interval from_s = a.support().iv[ifrom];
        Interval v2s{0, from_s.lo < 0 ? kPosInf : std::max(0, from_s.hi)};
        Interval v1s{from_s.lo < 0 ? kNegInf : 0, std::max(0, from_s.hi)};
        s.iv[ov2] = s.iv[ov2].plus(v2s);
        s.iv[ov1] = s.iv[ov1].plus(v1s);
        out.set_support(s);
        // The substitution replaces from^p by a sum of monomials of the same
        // total degree, so total-degree data carries over unchanged.
        out.set_total_support(a.total_support());
    }

    const Interval wi2 = requested.iv[ov2];
    if (wi2.hi >= kPosInf)
        throw window_too_small("substitute_binomial: unbounded expansion window");
    for (const auto& [e, c] : a.terms()) {
        int p = e[size_t(ifrom)];
        long long imax = wi2.hi;
        if (p >= 0) imax = std::min<long long>(imax, p);
        for (long long i = std::max(0, wi2.lo < 0 ? 0 : wi2.lo); i <= imax; ++i) {
            Scalar coef = binomial(p, i) * c1.pow(p - i) * c2.pow(i);
            if (coef.is_zero()) continue;
            Exp eo{0, 0, 0};
            for (int k = 0; k < a.arity(); ++k)
                if (map[size_t(k)] >= 0) eo[size_t(map[size_t(k)])] += e[size_t(k)];
            eo[size_t(ov1)] += int(p - i);
            eo[size_t(ov2)] += int(i);
            if (!requested.contains(eo)) continue;
            out.add_term(eo, c * coef);
        }
    }
    return out;
}

// Equality of two series on the intersection of their windows and a box.
// Returns the first differing exponent if any.
template <class C>
std::optional<Exp> first_difference(const LaurentSeries<C>& a, const LaurentSeries<C>& b,
                                    const Box& box) {
    if (a.vars() != b.vars()) throw invalid_input("variable mismatch in comparison");
    std::optional<Exp> best;
    auto scan = [&](const LaurentSeries<C>& x, const LaurentSeries<C>& y) {
        for (const auto& [e, c] : x.terms()) {
            if (!box.contains(e) || !x.known_at(e) || !y.known_at(e)) continue;
            if (cv_is_lossy(c)) continue;
            C d = y.coeff(e);
            if (cv_is_lossy(d)) continue;
            if (!(cv_is_zero(c - d))) {
                if (!best || e < *best) best = e;
            }
        }
    };
    scan(a, b);
    scan(b, a);
    return best;
}

// Number of coefficients both sides are authoritative about inside `box`
// (zero cells count; either side lossy or unknown does not).  Used by the
// verifiers to report how much was actually asserted.
template <class C>
long long comparable_cells(const LaurentSeries<C>& a, const LaurentSeries<C>& b, const Box& box) {
    Box w = box.intersect(a.window()).intersect(b.window());
    if (w.is_empty() || !w.is_finite()) return 0;
    long long n = 1;
    for (int i = 0; i < w.arity; ++i) n *= (long long)w.iv[i].hi - w.iv[i].lo + 1;
    return n;
}

} // namespace qva
