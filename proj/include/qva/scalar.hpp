#pragma once

// The coefficient field Q(zeta_N)(q): fractions of polynomials in the
// transcendental parameter q with cyclotomic coefficients, kept in canonical
// reduced form (monic denominator, gcd 1) so equality is structural.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "qva/cyclotomic.hpp"

namespace qva {

// Sparse polynomial in q over Q(zeta): ascending exponents, no zero terms.
class QPoly {
public:
    using Term = std::pair<int, Cyclo>;

    QPoly() = default;
    explicit QPoly(const Cyclo& c) {
        if (!c.is_zero()) t_.emplace_back(0, c);
    }
    static QPoly monomial(int e, const Cyclo& c) {
        QPoly p;
        if (!c.is_zero()) p.t_.emplace_back(e, c);
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_one() const {
        return t_.size() == 1 && t_[0].first == 0 && t_[0].second == Cyclo(Rat(1));
    }
    bool is_monomial() const { return t_.size() == 1; }
    int degree() const { return t_.empty() ? kNegInf : t_.back().first; }
    int low_degree() const { return t_.empty() ? kPosInf : t_.front().first; }
    const std::vector<Term>& terms() const { return t_; }
    const Cyclo& leading() const { return t_.back().second; }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        QPoly r;
        size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j >= b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first))
                r.t_.push_back(a.t_[i++]);
            else if (i >= a.t_.size() || b.t_[j].first < a.t_[i].first)
                r.t_.push_back(b.t_[j++]);
            else {
                Cyclo c = a.t_[i].second + b.t_[j].second;
                if (!c.is_zero()) r.t_.emplace_back(a.t_[i].first, c);
                ++i, ++j;
            }
        }
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
    QPoly operator-() const {
        QPoly r = *this;
        for (auto& [e, c] : r.t_) c = -c;
        return r;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::map<int, Cyclo> acc;
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                Cyclo p = ca * cb;
                auto it = acc.find(ea + eb);
                if (it == acc.end()) acc.emplace(ea + eb, std::move(p));
                else it->second = it->second + p;
            }
        QPoly r;
        for (auto& [e, c] : acc)
            if (!c.is_zero()) r.t_.emplace_back(e, std::move(c));
        return r;
    }
    QPoly scaled(const Cyclo& s) const {
        if (s.is_zero()) return {};
        QPoly r = *this;
        for (auto& [e, c] : r.t_) c = c * s;
        return r;
    }
    QPoly shifted(int k) const {
        QPoly r = *this;
        for (auto& [e, c] : r.t_) e += k;
        return r;
    }

    friend bool operator==(const QPoly& a, const QPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }
    friend bool operator<(const QPoly& a, const QPoly& b) { return a.t_ < b.t_; }

    // Euclidean division by a nonzero polynomial; returns (quotient, remainder).
    static std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
        if (b.is_zero()) throw invalid_input("polynomial division by zero");
        QPoly q;
        Cyclo lb_inv = b.leading().inverse();
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Cyclo c = a.leading() * lb_inv;
            int e = a.degree() - b.degree();
            QPoly m = QPoly::monomial(e, c);
            q = q + m;
            a = a - m * b;
        }
        return {std::move(q), std::move(a)};
    }

    static QPoly gcd(QPoly a, QPoly b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(std::move(a), b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a.scaled(a.leading().inverse()); // monic
        return a;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!s.empty()) s += " + ";
            std::string cs = c.str();
            bool simple = cs.find_first_of("+-") == std::string::npos ||
                          (cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos);
            if (e == 0) { s += simple ? cs : "(" + cs + ")"; continue; }
            if (cs != "1") s += (simple ? cs : "(" + cs + ")") + "*";
            s += "q";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<Term> t_;
};

class Scalar {
public:
    Scalar() : num_(), den_(QPoly(Cyclo(Rat(1)))) {}
    Scalar(long long v) : num_(QPoly(Cyclo(Rat(v)))), den_(QPoly(Cyclo(Rat(1)))) {}
    explicit Scalar(const Rat& v) : num_(QPoly(Cyclo(v))), den_(QPoly(Cyclo(Rat(1)))) {}
    explicit Scalar(const Cyclo& v) : num_(QPoly(v)), den_(QPoly(Cyclo(Rat(1)))) {}
    Scalar(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    static Scalar zeta(int order, long long k = 1) { return Scalar(Cyclo::root(order, k)); }
    static Scalar q_power(int e) {
        if (e >= 0) return Scalar(QPoly::monomial(e, Cyclo(Rat(1))), QPoly(Cyclo(Rat(1))));
        return Scalar(QPoly(Cyclo(Rat(1))), QPoly::monomial(-e, Cyclo(Rat(1))));
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) return a;
        return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return Scalar();
        return Scalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw invalid_input("scalar division by zero");
        if (a.is_zero()) return Scalar();
        return Scalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const {
        if (is_zero()) throw invalid_input("scalar division by zero");
        return Scalar(den_, num_);
    }
    Scalar pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar r = 1, b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        std::string n = num_.str();
        std::string d = den_.str();
        bool nsimple = num_.terms().size() <= 1;
        bool dsimple = den_.is_monomial() && den_.terms()[0].second == Cyclo(Rat(1));
        return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
    }

    size_t hash() const {
        size_t h = 1469598103934665603ull;
        auto mix = [&h](size_t v) { h ^= v; h *= 1099511628211ull; };
        auto poly = [&](const QPoly& p) {
            for (const auto& [e, c] : p.terms()) {
                mix(size_t(e) * 2654435761u);
                for (const auto& r : c.coords()) mix(std::hash<std::string>{}(r.str()));
            }
            mix(0x9e3779b9);
        };
        poly(num_);
        poly(den_);
        return h;
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw invalid_input("zero denominator");
        if (num_.is_zero()) {
            den_ = QPoly(Cyclo(Rat(1)));
            return;
        }
        // Cancel common q-powers first (cheap, covers the Laurent-in-q case).
        int shift = std::min(num_.low_degree(), den_.low_degree());
        if (shift > 0) {
            num_ = num_.shifted(-shift);
            den_ = den_.shifted(-shift);
        }
        if (!den_.is_monomial()) {
            QPoly g = QPoly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = QPoly::divmod(num_, g).first;
                den_ = QPoly::divmod(den_, g).first;
            }
        }
        // Monic denominator.
        if (!(den_.leading() == Cyclo(Rat(1)))) {
            Cyclo inv = den_.leading().inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    QPoly num_, den_;
};

inline Scalar operator*(long long a, const Scalar& b) { return Scalar(a) * b; }

// An element of the group Gamma: zeta_N^k * q^m, realized through the group
// map into the scalar field.  Root part is stored with minimal order so the
// representation (and equality) is canonical.
class GroupElement {
public:
    GroupElement() : root_exp_(0), root_order_(1), q_exp_(0) {}
    GroupElement(int root_exp, int root_order, int q_exp)
        : root_exp_(root_exp), root_order_(root_order), q_exp_(q_exp) {
        normalize();
    }
    static GroupElement one() { return GroupElement(); }
    static GroupElement root_of_unity(int k, int n) { return GroupElement(k, n, 0); }
    static GroupElement q_power(int m) { return GroupElement(0, 1, m); }

    int root_exp() const { return root_exp_; }
    int root_order() const { return root_order_; }
    int q_exp() const { return q_exp_; }
    bool is_one() const { return root_exp_ == 0 && q_exp_ == 0; }

    Scalar realize() const {
        Scalar r = root_order_ == 1 ? Scalar(1) : Scalar::zeta(root_order_, root_exp_);
        if (q_exp_ != 0) r *= Scalar::q_power(q_exp_);
        return r;
    }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        long long n = lcm_ll(a.root_order_, b.root_order_);
        long long k = (long long)a.root_exp_ * (n / a.root_order_) +
                      (long long)b.root_exp_ * (n / b.root_order_);
        return GroupElement(int(((k % n) + n) % n), int(n), a.q_exp_ + b.q_exp_);
    }
    GroupElement inverse() const {
        return GroupElement(root_order_ - root_exp_, root_order_, -q_exp_);
    }
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.root_exp_ == b.root_exp_ && a.root_order_ == b.root_order_ && a.q_exp_ == b.q_exp_;
    }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
    friend bool operator<(const GroupElement& a, const GroupElement& b) {
        return std::tuple(a.root_order_, a.root_exp_, a.q_exp_) <
               std::tuple(b.root_order_, b.root_exp_, b.q_exp_);
    }

    std::string str() const {
        if (is_one()) return "1";
        std::string s;
        if (root_exp_ != 0) {
            if (root_order_ == 2) s += "-1";
            else {
                s += "zeta" + std::to_string(root_order_);
                if (root_exp_ != 1) s += "^" + std::to_string(root_exp_);
            }
        }
        if (q_exp_ != 0) {
            if (!s.empty()) s += "*";
            s += "q";
            if (q_exp_ != 1) s += "^" + std::to_string(q_exp_);
        }
        return s;
    }

private:
    void normalize() {
        if (root_order_ <= 0) throw invalid_input("root order must be positive");
        root_exp_ = ((root_exp_ % root_order_) + root_order_) % root_order_;
        int g = int(gcd_ll(root_exp_ == 0 ? root_order_ : root_exp_, root_order_));
        root_exp_ /= g;
        root_order_ /= g;
        if (root_order_ == 0) root_order_ = 1;
    }

    int root_exp_;
    int root_order_;
    int q_exp_;
};

// --- Text grammar: integers, `z` (= zeta_N for the context order), `q`,
// --- operators + - * / ^ and parentheses.

class ScalarParser {
public:
    ScalarParser(std::string text, int cyclo_order)
        : s_(std::move(text)), order_(cyclo_order) {}

    Scalar parse() {
        Scalar v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw invalid_input("trailing input in scalar: " + s_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    Scalar expr() {
        Scalar v = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    Scalar term() {
        Scalar v = factor();
        for (;;) {
            if (eat('*')) v *= factor();
            else if (eat('/')) v /= factor();
            else return v;
        }
    }
    Scalar factor() {
        Scalar base = atom();
        if (eat('^')) {
            skip_ws();
            bool neg = eat('-');
            long long e = integer();
            base = base.pow(neg ? -e : e);
        }
        return base;
    }
    Scalar atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw invalid_input("unexpected end of scalar text");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!eat(')')) throw invalid_input("missing ')' in scalar text");
            return v;
        }
        if (c == '-') { ++pos_; return -atom(); }
        if (c == 'z') { ++pos_; return Scalar::zeta(order_, 1); }
        if (c == 'q') { ++pos_; return Scalar::q_power(1); }
        if (std::isdigit((unsigned char)c)) return Scalar(integer());
        throw invalid_input(std::string("unexpected character '") + c + "' in scalar text");
    }
    long long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (start == pos_) throw invalid_input("expected integer in scalar text");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    std::string s_;
    int order_;
    size_t pos_ = 0;
};

inline Scalar parse_scalar(const std::string& text, int cyclo_order) {
    return ScalarParser(text, cyclo_order).parse();
}

// Falling factorial m*(m-1)*...*(m-j+1) as a scalar.
inline Scalar falling_factorial(long long m, int j) {
    Scalar r = 1;
    for (int i = 0; i < j; ++i) r *= Scalar(m - i);
    return r;
}

inline Scalar binomial(long long n, long long k) {
    // Generalized binomial: n may be any integer, k >= 0.
    if (k < 0) return Scalar();
    Rat r(1);
    for (long long i = 0; i < k; ++i) {
        r *= Rat(n - i);
        r /= Rat(i + 1);
    }
    return Scalar(r);
}

inline Rat factorial(int n) {
    Rat r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace qva
