#pragma once

// Univariate polynomials over the scalar field, extended gcd, and the
// factored form (known roots with multiplicities) used by quasi-locality
// witnesses and annihilator decompositions.

#include <utility>
#include <vector>

#include "qva/scalar.hpp"

namespace qva {

class UPoly {
public:
    UPoly() = default;
    explicit UPoly(Scalar c) { c_.push_back(std::move(c)); trim(); }
    explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly x() { return UPoly(std::vector<Scalar>{Scalar(0), Scalar(1)}); }
    static UPoly monomial(int e, Scalar c) {
        std::vector<Scalar> v(size_t(e) + 1);
        v[size_t(e)] = std::move(c);
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; } // -1 for zero
    const Scalar& leading() const { return c_.back(); }
    Scalar coeff(int e) const {
        return (e >= 0 && e < int(c_.size())) ? c_[size_t(e)] : Scalar();
    }
    const std::vector<Scalar>& coeffs() const { return c_; }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] += b.c_[i];
        }
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly scaled(const Scalar& s) const {
        UPoly r = *this;
        for (auto& c : r.c_) c *= s;
        r.trim();
        return r;
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    Scalar eval(const Scalar& x) const {
        Scalar v;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    static std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
        if (b.is_zero()) throw invalid_input("polynomial division by zero");
        UPoly q;
        Scalar lb = b.leading().inverse();
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Scalar c = a.leading() * lb;
            int e = a.degree() - b.degree();
            UPoly m = UPoly::monomial(e, c);
            q = q + m;
            a = a - m * b;
            // Guard against a stale leading zero.
            a.trim();
        }
        return {std::move(q), std::move(a)};
    }

    UPoly monic() const {
        if (is_zero()) return {};
        return scaled(leading().inverse());
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int e = degree(); e >= 0; --e) {
            if (c_[size_t(e)].is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = c_[size_t(e)].str();
            if (e == 0) { s += cs; continue; }
            if (cs != "1") s += "(" + cs + ")*";
            s += "x";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

struct ExtGcdResult {
    UPoly gcd; // monic
    UPoly u, v; // u*f + v*g == gcd
};

// Extended Euclid over Q(zeta_N)(q)[x].  Both inputs zero is invalid input.
inline ExtGcdResult poly_extended_gcd(const UPoly& f, const UPoly& g) {
    if (f.is_zero() && g.is_zero())
        throw invalid_input("poly_extended_gcd: both inputs are zero");
    UPoly r0 = f, r1 = g;
    UPoly s0(Scalar(1)), s1;
    UPoly t0, t1(Scalar(1));
    while (!r1.is_zero()) {
        auto [q, r] = UPoly::divmod(r0, r1);
        UPoly s2 = s0 - q * s1;
        UPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    Scalar lead = r0.leading().inverse();
    return {r0.scaled(lead), s0.scaled(lead), t0.scaled(lead)};
}

// p(x) = scale * x^x_power * prod (x - root_i)^mult_i, roots distinct/nonzero.
struct FactoredPoly {
    struct Root {
        Scalar value;
        int mult = 1;
    };
    Scalar scale = Scalar(1);
    int x_power = 0;
    std::vector<Root> roots;

    UPoly expand() const {
        UPoly p = UPoly::monomial(x_power, scale);
        for (const auto& r : roots) {
            UPoly lin(std::vector<Scalar>{-r.value, Scalar(1)});
            for (int i = 0; i < r.mult; ++i) p = p * lin;
        }
        return p;
    }
    int multiplicity_of(const Scalar& a) const {
        for (const auto& r : roots)
            if (r.value == a) return r.mult;
        return 0;
    }
    int degree() const {
        int d = x_power;
        for (const auto& r : roots) d += r.mult;
        return d;
    }
};

// Bezout cofactors q_i with sum q_i * p_i == 1, where p_i = p / (x-a_i)^k_i.
// Built by iterated extended gcd; exactness is re-checked by expansion.
inline std::vector<UPoly> bezout_cofactors(const std::vector<UPoly>& parts) {
    if (parts.empty()) throw invalid_input("bezout_cofactors: no parts");
    std::vector<UPoly> q(parts.size());
    // Invariant: g divides all of parts[0..i], with g = sum q_j * parts_j so far.
    UPoly g = parts[0];
    q[0] = UPoly(Scalar(1));
    for (size_t i = 1; i < parts.size(); ++i) {
        ExtGcdResult e = poly_extended_gcd(g, parts[i]);
        for (size_t j = 0; j < i; ++j) q[j] = q[j] * e.u;
        q[i] = e.v;
        g = e.gcd;
    }
    if (g.degree() != 0)
        throw invalid_input("bezout_cofactors: parts are not coprime");
    Scalar inv = g.coeff(0).inverse();
    for (auto& qi : q) qi = qi.scaled(inv);
    return q;
}

} // namespace qva
