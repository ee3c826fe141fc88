#ifndef ORETEL_RATFN_HPP
#define ORETEL_RATFN_HPP

#include "poly.hpp"

namespace oretel {

// Rational function num/den over a field K, den monic, gcd(num, den) = 1.
template<class K>
class RatFn {
public:
    Poly<K> num, den;

    RatFn() : den(1) {}
    RatFn(long v) : num(v), den(1) {}
    explicit RatFn(const K& v) : num(v), den(1) {}
    RatFn(Poly<K> n, Poly<K> d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit RatFn(Poly<K> n) : num(std::move(n)), den(1) {}

    static RatFn x() { return RatFn(Poly<K>::x()); }

    void normalize() {
        check(!den.is_zero(), "rational function with zero denominator");
        if (num.is_zero()) { den = Poly<K>(1); return; }
        Poly<K> g = poly_gcd(num, den);
        if (g.degree() > 0) { num = num / g; den = den / g; }
        if (!(den.lc() == K(1))) {
            const K inv = K(1) / den.lc();
            num = num * inv;
            den = den * inv;
        }
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_polynomial() const { return den.is_one(); }

    // deg num - deg den (degree of zero is -1 by the Poly convention; callers
    // that need -infinity check is_zero first)
    long degree() const { return num.degree() - den.degree(); }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num * b.num, a.den * b.den);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        check(!b.is_zero(), "division by zero rational function");
        return RatFn(a.num * b.den, a.den * b.num);
    }
    RatFn operator-() const { RatFn r = *this; r.num = -r.num; return r; }
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    RatFn& operator+=(const RatFn& o) { *this = *this + o; return *this; }
    RatFn& operator-=(const RatFn& o) { *this = *this - o; return *this; }
    RatFn& operator*=(const RatFn& o) { *this = *this * o; return *this; }
    RatFn& operator/=(const RatFn& o) { *this = *this / o; return *this; }

    RatFn inv() const {
        check(!is_zero(), "inverse of zero");
        return RatFn(den, num);
    }
};

template<class K> bool is_zero(const RatFn<K>& a) { return a.is_zero(); }

// f(x + k)
template<class K>
RatFn<K> shift_ratfn(const RatFn<K>& f, long k) {
    if (k == 0) return f;
    return RatFn<K>(shift_poly(f.num, k), shift_poly(f.den, k));
}

// order of vanishing of f at the monic irreducible (or squarefree) p:
// multiplicity of p in num minus multiplicity in den
template<class K>
long order_at(const RatFn<K>& f, const Poly<K>& p) {
    check(!f.is_zero(), "order_at of zero");
    long v = 0;
    Poly<K> n = f.num;
    while (true) {
        auto [q, r] = divrem(n, p);
        if (!r.is_zero()) break;
        n = q; ++v;
    }
    Poly<K> d = f.den;
    while (true) {
        auto [q, r] = divrem(d, p);
        if (!r.is_zero()) break;
        d = q; --v;
    }
    return v;
}

// The exact coefficient fields of the tower: QQ and QQ(t).
using QQ = Rat;
using QT = RatFn<Rat>;

inline QT qt_t() { return QT::x(); }

inline bool qt_is_rat(const QT& a) { return a.num.is_constant() && a.den.is_one(); }

// gcd over QQ(t)[x] via a primitive remainder sequence in QQ[t][x]; the
// generic monic Euclid blows up the t-degrees of intermediate coefficients.
namespace qtgcd {

using TP = Poly<Rat>; // element of QQ[t]

// clear coefficient denominators: returns x-polynomial over QQ[t]
inline std::vector<TP> clear_den(const Poly<QT>& p) {
    TP den(1);
    for (auto& c : p.c) den = poly_lcm(den, c.den);
    std::vector<TP> out;
    out.reserve(p.c.size());
    for (auto& c : p.c) out.push_back(c.num * (den / c.den));
    return out;
}

inline TP content_t(const std::vector<TP>& a) {
    TP g;
    for (auto& c : a) g = poly_gcd(g, c);
    return g.is_zero() ? TP(1) : g;
}

inline void make_primitive(std::vector<TP>& a) {
    TP g = content_t(a);
    if (g.degree() > 0 || !(g == TP(1)))
        for (auto& c : a) c = c / g;
}

inline long bdeg(const std::vector<TP>& a) {
    long d = static_cast<long>(a.size()) - 1;
    while (d >= 0 && a[static_cast<size_t>(d)].is_zero()) --d;
    return d;
}

// pseudo-remainder of a by b in QQ[t][x]
inline std::vector<TP> prem(std::vector<TP> a, const std::vector<TP>& b) {
    long da = bdeg(a), db = bdeg(b);
    const TP& lb = b[static_cast<size_t>(db)];
    while (da >= db) {
        TP la = a[static_cast<size_t>(da)];
        for (long i = 0; i <= da; ++i) a[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] * lb;
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(da - db + i)] = a[static_cast<size_t>(da - db + i)] - la * b[static_cast<size_t>(i)];
        a[static_cast<size_t>(da)] = TP();
        long nd = da - 1;
        while (nd >= 0 && a[static_cast<size_t>(nd)].is_zero()) --nd;
        da = nd;
        if (da < 0) break;
    }
    if (da < 0) return {};
    a.resize(static_cast<size_t>(da) + 1);
    return a;
}

} // namespace qtgcd

inline Poly<QT> poly_gcd(const Poly<QT>& a, const Poly<QT>& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return Poly<QT>(1);
    std::vector<qtgcd::TP> A = qtgcd::clear_den(a), B = qtgcd::clear_den(b);
    qtgcd::make_primitive(A);
    qtgcd::make_primitive(B);
    if (qtgcd::bdeg(A) < qtgcd::bdeg(B)) std::swap(A, B);
    while (true) {
        std::vector<qtgcd::TP> R = qtgcd::prem(A, B);
        if (R.empty()) break;
        qtgcd::make_primitive(R);
        A = std::move(B);
        B = std::move(R);
        if (qtgcd::bdeg(B) == 0) return Poly<QT>(1);
    }
    Poly<QT> g;
    g.c.reserve(B.size());
    for (auto& c : B) g.c.push_back(QT(c));
    g.trim();
    return g.monic();
}

template<class K> struct field_name;
template<> struct field_name<QQ> { static constexpr const char* value = "QQ"; };
template<> struct field_name<QT> { static constexpr const char* value = "QQ(t)"; };

} // namespace oretel

#endif
