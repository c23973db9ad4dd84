#pragma once

// Exact arithmetic in Q(zeta_N): elements are stored reduced modulo the N-th
// cyclotomic polynomial, as coordinate vectors of length phi(N) over Q.
// Mixed orders coerce to the lcm order through zeta_N = zeta_M^(M/N).

#include <map>
#include <mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qva/core.hpp"

namespace qva {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

namespace detail {

// Integer polynomials, dense, used only to compute cyclotomic polynomials.
inline std::vector<Int> zpoly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
    std::vector<Int> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    while (a.size() >= b.size() && !a.empty()) {
        if (a.back() == 0) { a.pop_back(); continue; }
        Int c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return q;
}

inline std::vector<Int> cyclotomic_poly(int n) {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = zpoly_div_exact(std::move(num), cyclotomic_poly(d));
    }
    return num;
}

struct CycloTable {
    int order = 1;
    int phi = 1;
    std::vector<Rat> modulus;               // Phi_N, monic, degree phi
    std::vector<std::vector<Rat>> powers;   // z^k reduced, for k in [0, 2*order)

    explicit CycloTable(int n) : order(n) {
        auto zc = cyclotomic_poly(n);
        phi = int(zc.size()) - 1;
        modulus.assign(zc.begin(), zc.end());
        powers.resize(2 * size_t(n));
        // z^k for k < phi is a coordinate vector; beyond that reduce by the
        // modulus, and from k = n on use z^n = 1.
        for (int k = 0; k < 2 * n; ++k) {
            if (k < phi) {
                std::vector<Rat> v(phi, Rat(0));
                v[k] = 1;
                powers[k] = std::move(v);
            } else if (k >= n) {
                powers[k] = powers[k - n];
            } else {
                // z^k = z * z^(k-1), reduce the overflow coordinate.
                std::vector<Rat> v(phi + 1, Rat(0));
                const auto& prev = powers[k - 1];
                for (int i = 0; i < phi; ++i) v[i + 1] = prev[i];
                Rat top = v[phi];
                std::vector<Rat> r(phi, Rat(0));
                for (int i = 0; i < phi; ++i) r[i] = v[i] - top * modulus[i];
                powers[k] = std::move(r);
            }
        }
    }
};

inline const CycloTable& cyclo_table(int n) {
    static std::mutex mu;
    static std::map<int, CycloTable> tables;
    std::lock_guard<std::mutex> lk(mu);
    auto it = tables.find(n);
    if (it == tables.end()) it = tables.emplace(n, CycloTable(n)).first;
    return it->second;
}

} // namespace detail

class Cyclo {
public:
    Cyclo() : order_(1), c_(1, Rat(0)) {}
    explicit Cyclo(const Rat& r) : order_(1), c_(1, r) {}
    explicit Cyclo(long long r) : order_(1), c_(1, Rat(r)) {}

    // zeta_n^k, scaled.
    static Cyclo root(int n, long long k, const Rat& scale = Rat(1)) {
        if (n <= 0) throw invalid_input("cyclotomic order must be positive");
        long long kk = ((k % n) + n) % n;
        const auto& t = detail::cyclo_table(n);
        Cyclo out;
        out.order_ = n;
        out.c_ = t.powers[size_t(kk)];
        for (auto& x : out.c_) x *= scale;
        out.trim();
        return out;
    }

    int order() const { return order_; }
    bool is_zero() const {
        for (const auto& x : c_) if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i) if (c_[i] != 0) return false;
        return true;
    }
    const Rat& rational_part() const { return c_[0]; }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = coerced(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        x.trim();
        return x;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = coerced(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        x.trim();
        return x;
    }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = coerced(a, b);
        const auto& t = detail::cyclo_table(x.order_);
        int phi = t.phi;
        std::vector<Rat> conv(2 * size_t(phi) - 1, Rat(0));
        for (int i = 0; i < phi; ++i) {
            if (x.c_[i] == 0) continue;
            for (int j = 0; j < phi; ++j) {
                if (y.c_[j] == 0) continue;
                conv[i + j] += x.c_[i] * y.c_[j];
            }
        }
        Cyclo out;
        out.order_ = x.order_;
        out.c_.assign(phi, Rat(0));
        for (int k = 0; k < int(conv.size()); ++k) {
            if (conv[k] == 0) continue;
            const auto& pw = t.powers[size_t(k)];
            for (int i = 0; i < phi; ++i) out.c_[i] += conv[k] * pw[i];
        }
        out.trim();
        return out;
    }

    // Inverse via linear algebra over Q: solve (x * z^j coordinates) system.
    Cyclo inverse() const {
        if (is_zero()) throw invalid_input("division by zero in Q(zeta)");
        if (is_rational()) return Cyclo::with(order_, rational_inv(c_[0]));
        const auto& t = detail::cyclo_table(order_);
        int phi = t.phi;
        // Columns: this * z^j for j = 0..phi-1; solve M * v = e0.
        std::vector<std::vector<Rat>> m(phi, std::vector<Rat>(phi + 1, Rat(0)));
        for (int j = 0; j < phi; ++j) {
            Cyclo col = *this * Cyclo::root(order_, j);
            for (int i = 0; i < phi; ++i) m[i][j] = col.c_[i];
        }
        m[0][phi] = 1;
        // Gaussian elimination with exact pivots.
        for (int col = 0, row = 0; col < phi && row < phi; ++col) {
            int piv = -1;
            for (int r = row; r < phi; ++r)
                if (m[r][col] != 0) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(m[piv], m[row]);
            Rat p = m[row][col];
            for (int c = col; c <= phi; ++c) m[row][c] /= p;
            for (int r = 0; r < phi; ++r) {
                if (r == row || m[r][col] == 0) continue;
                Rat f = m[r][col];
                for (int c = col; c <= phi; ++c) m[r][c] -= f * m[row][c];
            }
            ++row;
        }
        Cyclo out;
        out.order_ = order_;
        out.c_.assign(phi, Rat(0));
        for (int j = 0; j < phi; ++j) out.c_[j] = m[j][phi];
        if ((*this * out) != Cyclo(Rat(1)).embedded(order_))
            throw invalid_input("non-invertible cyclotomic element");
        return out;
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = coerced(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // Deterministic total order (used for canonical term ordering).
    friend bool operator<(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = coerced(a, b);
        return x.c_ < y.c_;
    }

    Cyclo embedded(int target_order) const {
        if (target_order % order_ != 0)
            throw invalid_input("cyclotomic order does not divide target order");
        if (target_order == order_) return *this;
        int m = target_order / order_;
        const auto& t = detail::cyclo_table(target_order);
        Cyclo out;
        out.order_ = target_order;
        out.c_.assign(t.phi, Rat(0));
        for (int k = 0; k < int(c_.size()); ++k) {
            if (c_[k] == 0) continue;
            const auto& pw = t.powers[size_t(k) * size_t(m) % size_t(target_order)];
            for (int i = 0; i < t.phi; ++i) out.c_[i] += c_[k] * pw[i];
        }
        return out;
    }

    const std::vector<Rat>& coords() const { return c_; }

    std::string str() const {
        std::string s;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Rat v = c_[i];
            bool neg = v < 0;
            if (neg) v = -v;
            if (first) { if (neg) s += "-"; }
            else s += neg ? " - " : " + ";
            first = false;
            std::string coef = v.str();
            if (i == 0) s += coef;
            else {
                if (coef != "1") s += coef + "*";
                s += "z";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        if (first) s = "0";
        return s;
    }

private:
    static Cyclo with(int order, const Rat& r) {
        Cyclo c;
        c.order_ = order;
        c.c_.assign(size_t(detail::cyclo_table(order).phi), Rat(0));
        c.c_[0] = r;
        return c;
    }
    static Rat rational_inv(const Rat& r) {
        if (r == 0) throw invalid_input("division by zero");
        return Rat(1) / r;
    }
    static std::pair<Cyclo, Cyclo> coerced(const Cyclo& a, const Cyclo& b) {
        if (a.order_ == b.order_) return {a, b};
        long long l = lcm_ll(a.order_, b.order_);
        return {a.embedded(int(l)), b.embedded(int(l))};
    }
    // Collapse back to order 1 when the value is rational, so that equal values
    // compare equal regardless of construction history.
    void trim() {
        if (order_ != 1 && is_rational()) {
            Rat r = c_[0];
            order_ = 1;
            c_.assign(1, r);
        }
    }

    int order_;
    std::vector<Rat> c_;
};

} // namespace qva
