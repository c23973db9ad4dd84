#pragma once

// Decomposition of two-variable kernels annihilated by p(x1/x2) into delta
// distributions along the roots of p, and the inverse (expansion) map.  The
// primary route solves the window-coefficient linear system; the projection
// route through Bezout cofactors is kept as an independent cross-check.

#include <random>

#include "qva/formal.hpp"
#include "qva/upoly.hpp"

namespace qva {

// One summand c(x2) * D^j x1^{-1} delta(alpha x2/x1), where D is either the
// plain d/dx2 or the normalized (alpha^{-1} d/dx2)^j / j!.
enum class DeltaNormalization { PlainDerivative, Normalized };

template <class C>
struct DeltaTerm {
    Scalar alpha;
    int j = 0;
    LaurentSeries<C> coeff; // univariate in vb
    DeltaNormalization norm = DeltaNormalization::Normalized;
};

template <class C>
struct DeltaExpansion {
    Var va = Var::x1;
    Var vb = Var::x2;
    std::vector<DeltaTerm<C>> terms;

    void validate() const {
        for (size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].alpha.is_zero())
                throw invalid_input("delta expansion with zero direction");
            for (size_t k = 0; k < i; ++k)
                if (terms[k].alpha == terms[i].alpha && terms[k].j == terms[i].j)
                    throw invalid_input("duplicate (alpha, j) in delta expansion");
        }
    }

    // Convert a term's coefficient to the normalized convention.
    static LaurentSeries<C> normalized_coeff(const DeltaTerm<C>& t) {
        if (t.norm == DeltaNormalization::Normalized) return t.coeff;
        // plain D^j = j! alpha^j * normalized form
        return t.coeff.scaled(Scalar(factorial(t.j)) * t.alpha.pow(t.j));
    }

    LaurentSeries<C> expand(const Box& window) const {
        validate();
        std::vector<Var> vars{std::min(va, vb), std::max(va, vb)};
        LaurentSeries<C> acc(vars, window, Box::full(2));
        for (const auto& t : terms) {
            LaurentSeries<C> cf = normalized_coeff(t);
            Scalar scale = t.alpha.pow(-t.j) / Scalar(factorial(t.j));
            Box dwin = needed_window(window, promoted(cf, vars).support());
            ScalarSeries d = delta_coefficients(t.alpha, t.j, dwin, va, vb);
            acc = acc + multiply(promoted(cf, vars), d, window).scaled(scale);
        }
        return acc;
    }
};

// Multiply a two-variable series by p(va/vb) for a univariate polynomial p.
template <class C>
LaurentSeries<C> apply_ratio_poly(const LaurentSeries<C>& a, const UPoly& p, Var va, Var vb) {
    int ia = a.index_of(va), ib = a.index_of(vb);
    LaurentSeries<C> acc(a.vars(), Box::empty_box(a.arity()), Box::empty_box(a.arity()));
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
        Scalar c = p.coeff(k);
        if (c.is_zero()) continue;
        Exp sh{0, 0, 0};
        sh[size_t(ia)] = k;
        sh[size_t(ib)] = -k;
        LaurentSeries<C> t = a.shifted(sh).scaled(c);
        acc = first ? t : acc + t;
        first = false;
    }
    return acc;
}

template <class C>
bool annihilates_on_window(const LaurentSeries<C>& a, const UPoly& p, Var va, Var vb,
                           Box* where = nullptr) {
    LaurentSeries<C> pa = apply_ratio_poly(a, p, va, vb);
    if (where) *where = pa.window();
    return pa.is_zero_on_window();
}

namespace detail {

// Solve M x = rhs by Gaussian elimination with Scalar pivots; rhs entries live
// in any Scalar-module C.  Returns false when M is singular.
template <class C>
bool solve_linear(std::vector<std::vector<Scalar>> m, std::vector<C> rhs, std::vector<C>& out) {
    const size_t n = m.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Scalar inv = m[col][col].inverse();
        for (size_t c = col; c < n; ++c) m[col][c] *= inv;
        rhs[col] = rhs[col] * inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Scalar f = m[r][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] = rhs[r] + rhs[col] * (-f);
        }
    }
    out = std::move(rhs);
    return true;
}

} // namespace detail

// Decompose A with p(va/vb) A = 0 into delta terms along the roots of p.
// The roots (with multiplicities) are supplied in factored form; the x-power
// of p is irrelevant and stripped.  Coefficients are recovered by solving,
// for each diagonal offset u, the linear system indexed by va-exponents, and
// every additional window equation is checked for consistency.
template <class C>
DeltaExpansion<C> annihilator_decompose(const LaurentSeries<C>& a, const FactoredPoly& p,
                                        Var va = Var::x1, Var vb = Var::x2) {
    if (p.roots.empty()) throw invalid_input("annihilator with no roots");
    UPoly pexp = p.expand();
    if (!annihilates_on_window(a, pexp, va, vb))
        throw invalid_input("kernel is not annihilated by p on the window");

    int ia = a.index_of(va), ib = a.index_of(vb);
    const Interval w1 = a.window().iv[ia];
    const Interval w2 = a.window().iv[ib];
    if (w1.empty() || w2.empty() || !w1.is_finite() || !w2.is_finite())
        throw window_too_small("annihilator_decompose needs a finite nonempty window");

    // Unknown slots (i, j), j < mult_i.
    struct Slot {
        size_t root;
        int j;
    };
    std::vector<Slot> slots;
    for (size_t i = 0; i < p.roots.size(); ++i)
        for (int j = 0; j < p.roots[i].mult; ++j) slots.push_back({i, j});
    const size_t n = slots.size();

    // va-exponent -m-1 corresponds to row parameter m.
    const long long m_lo = -(long long)w1.hi - 1;
    const long long m_hi = -(long long)w1.lo - 1;

    DeltaExpansion<C> out;
    out.va = va;
    out.vb = vb;
    for (size_t s = 0; s < n; ++s) {
        DeltaTerm<C> t;
        t.alpha = p.roots[slots[s].root].value;
        t.j = slots[s].j;
        t.coeff = LaurentSeries<C>(std::vector<Var>{vb}, Box::empty_box(1), Box::full(1));
        t.norm = DeltaNormalization::Normalized;
        out.terms.push_back(std::move(t));
    }

    // For each diagonal u: A(-m-1, m+u) = sum_slots alpha^(m-j) (m)_j / j! * B_slot(u+j).
    const long long u_lo = (long long)w2.lo - m_hi;
    const long long u_hi = (long long)w2.hi - m_lo;
    Interval solved{kPosInf, kNegInf};
    for (long long u = u_lo; u <= u_hi; ++u) {
        long long lo = std::max(m_lo, (long long)w2.lo - u);
        long long hi = std::min(m_hi, (long long)w2.hi - u);
        if (hi - lo + 1 < (long long)n) continue;

        std::vector<std::vector<Scalar>> mat(n, std::vector<Scalar>(n));
        std::vector<C> rhs(n);
        for (size_t r = 0; r < n; ++r) {
            long long m = lo + (long long)r;
            for (size_t c = 0; c < n; ++c) {
                int j = slots[c].j;
                mat[r][c] = p.roots[slots[c].root].value.pow(m - j) *
                            falling_factorial(m, j) / Scalar(factorial(j));
            }
            Exp e{0, 0, 0};
            e[size_t(ia)] = int(-m - 1);
            e[size_t(ib)] = int(m + u);
            rhs[r] = a.coeff(e);
        }
        std::vector<C> sol;
        if (!detail::solve_linear(mat, rhs, sol))
            throw window_too_small("annihilator_decompose: singular system (window too small)");
        // Consistency on the remaining rows of this diagonal.
        for (long long m = lo + (long long)n; m <= hi; ++m) {
            C acc{};
            for (size_t c = 0; c < n; ++c) {
                int j = slots[c].j;
                Scalar f = p.roots[slots[c].root].value.pow(m - j) * falling_factorial(m, j) /
                           Scalar(factorial(j));
                acc = acc + sol[c] * f;
            }
            Exp e{0, 0, 0};
            e[size_t(ia)] = int(-m - 1);
            e[size_t(ib)] = int(m + u);
            C diff = acc + a.coeff(e) * Scalar(-1);
            if (!cv_is_zero(diff))
                throw invalid_input("annihilator_decompose: inconsistent system on window");
        }
        solved = solved.empty() ? Interval{int(u), int(u)} : solved.hull({int(u), int(u)});
        for (size_t c = 0; c < n; ++c) {
            Exp e{int(u + slots[c].j), 0, 0};
            out.terms[c].coeff.set(e, sol[c]);
        }
    }
    if (solved.empty())
        throw window_too_small("annihilator_decompose: no solvable diagonal in window");
    for (size_t c = 0; c < n; ++c) {
        Box w = Box::full(1);
        w.iv[0] = {solved.lo + slots[c].j, solved.hi + slots[c].j};
        out.terms[c].coeff.set_window(w);
    }
    return out;
}

// Independent route: project onto each root via the Bezout cofactors of
// p_i = p / (x - alpha_i)^{mult_i}, then strip derivative orders from the top
// with B_(i,j) = Res_va [ (va - alpha_i vb)^j * A_i ].
template <class C>
DeltaExpansion<C> annihilator_decompose_bezout(const LaurentSeries<C>& a, const FactoredPoly& p,
                                               Var va = Var::x1, Var vb = Var::x2) {
    if (p.roots.empty()) throw invalid_input("annihilator with no roots");
    std::vector<UPoly> parts;
    for (size_t i = 0; i < p.roots.size(); ++i) {
        UPoly part(Scalar(1));
        for (size_t k = 0; k < p.roots.size(); ++k) {
            if (k == i) continue;
            UPoly lin(std::vector<Scalar>{-p.roots[k].value, Scalar(1)});
            for (int j = 0; j < p.roots[k].mult; ++j) part = part * lin;
        }
        parts.push_back(part);
    }
    std::vector<UPoly> cof = bezout_cofactors(parts);

    DeltaExpansion<C> out;
    out.va = va;
    out.vb = vb;
    std::vector<Var> vars = a.vars();
    int ia = a.index_of(va), ib = a.index_of(vb);
    for (size_t i = 0; i < p.roots.size(); ++i) {
        LaurentSeries<C> ai = apply_ratio_poly(a, parts[i] * cof[i], va, vb);
        const Scalar& alpha = p.roots[i].value;
        for (int j = 0; j < p.roots[i].mult; ++j) {
            // (va - alpha vb)^j as an exact polynomial series.
            LaurentSeries<Scalar> lin = ScalarSeries::exact(vars);
            {
                Exp e1{0, 0, 0}, e2{0, 0, 0};
                e1[size_t(ia)] = 1;
                e2[size_t(ib)] = 1;
                lin.set(e1, Scalar(1));
                lin.set(e2, -alpha);
            }
            LaurentSeries<C> m = ai;
            for (int t = 0; t < j; ++t) m = multiply(m, lin, needed_window(m.window(), lin.support()));
            DeltaTerm<C> term;
            term.alpha = alpha;
            term.j = j;
            term.norm = DeltaNormalization::Normalized;
            term.coeff = residue(m, va);
            out.terms.push_back(std::move(term));
        }
    }
    return out;
}

} // namespace qva
