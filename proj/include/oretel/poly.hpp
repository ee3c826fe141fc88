#ifndef ORETEL_POLY_HPP
#define ORETEL_POLY_HPP

#include "numeric.hpp"
#include <algorithm>
#include <utility>

namespace oretel {

inline bool is_zero(const Rat& a) { return mpq_sgn(a.get_mpq_t()) == 0; }
inline bool is_zero(const Int& a) { return mpz_sgn(a.get_mpz_t()) == 0; }
template<class K> bool is_zero(const K& a) { return a.is_zero(); }

// Dense univariate polynomial over a field K, coefficients low-to-high.
// The variable name is contextual (x at the top level, t inside QT, etc.).
template<class K>
class Poly {
public:
    std::vector<K> c;

    Poly() = default;
    Poly(long v) { if (v != 0) c.push_back(K(v)); }
    explicit Poly(const K& v) { if (!oretel::is_zero(v)) c.push_back(v); }
    explicit Poly(std::vector<K> cs) : c(std::move(cs)) { trim(); }

    static Poly x(long power = 1) {
        Poly p;
        p.c.assign(static_cast<size_t>(power) + 1, K(0));
        p.c.back() = K(1);
        return p;
    }

    void trim() {
        while (!c.empty() && oretel::is_zero(c.back())) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const K& lc() const { check(!c.empty(), "leading coefficient of zero polynomial"); return c.back(); }
    K coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c.size())) return K(0);
        return c[static_cast<size_t>(i)];
    }
    bool is_constant() const { return c.size() <= 1; }
    bool is_one() const { return c.size() == 1 && c[0] == K(1); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()), K(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, K(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (oretel::is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const K& s) {
        Poly r = a;
        for (auto& v : r.c) v = v * s;
        r.trim();
        return r;
    }
    friend Poly operator*(const K& s, const Poly& a) { return a * s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a.c == b.c); }

    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    template<class V>
    V eval(const V& v) const {
        V r(0);
        for (size_t i = c.size(); i-- > 0;) r = r * v + V(c[i]);
        return r;
    }
    K operator()(const K& v) const { return eval<K>(v); }

    Poly derivative() const {
        Poly r;
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * K(static_cast<long>(i));
        r.trim();
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        const K inv = K(1) / lc();
        return *this * inv;
    }

    // multiply by x^k (k >= 0)
    Poly shift_up(long k) const {
        if (is_zero()) return *this;
        Poly r;
        r.c.assign(c.size() + static_cast<size_t>(k), K(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i + static_cast<size_t>(k)] = c[i];
        return r;
    }
};

template<class K>
std::pair<Poly<K>, Poly<K>> divrem(const Poly<K>& a, const Poly<K>& b) {
    check(!b.is_zero(), "polynomial division by zero");
    Poly<K> q, r = a;
    const long db = b.degree();
    const K lb_inv = K(1) / b.lc();
    if (r.degree() >= db) q.c.assign(static_cast<size_t>(r.degree() - db) + 1, K(0));
    while (!r.is_zero() && r.degree() >= db) {
        const long d = r.degree() - db;
        const K f = r.lc() * lb_inv;
        q.c[static_cast<size_t>(d)] = f;
        for (long i = 0; i <= db; ++i)
            r.c[static_cast<size_t>(i + d)] = r.c[static_cast<size_t>(i + d)] - f * b.c[static_cast<size_t>(i)];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template<class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divrem(a, b);
    check(r.is_zero(), "inexact polynomial division");
    return q;
}

template<class K>
Poly<K> poly_mod(const Poly<K>& a, const Poly<K>& b) { return divrem(a, b).second; }

template<class K>
bool divides(const Poly<K>& b, const Poly<K>& a) {
    if (a.is_zero()) return true;
    if (b.is_zero() || a.degree() < b.degree()) return false;
    return divrem(a, b).second.is_zero();
}

// Monic gcd.  Coefficients are renormalized each step which keeps growth
// tolerable at the degrees this library works with.
template<class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        Poly<K> r = divrem(a, b).second;
        a = b;
        b = r.is_zero() ? r : r.monic();
    }
    return a;
}

template<class K>
Poly<K> poly_lcm(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<K>();
    return ((a * b) / poly_gcd(a, b)).monic();
}

// extended gcd: g = s*a + t*b, g monic
template<class K>
Poly<K> poly_xgcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& s, Poly<K>& t) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>(1), s1 = Poly<K>(), t0 = Poly<K>(), t1 = Poly<K>(1);
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        r0 = r1; r1 = r2;
        Poly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_zero()) {
        const K inv = K(1) / r0.lc();
        r0 = r0 * inv; s0 = s0 * inv; t0 = t0 * inv;
    }
    s = s0; t = t0;
    return r0;
}

// p(x + a)
template<class K>
Poly<K> taylor_shift(const Poly<K>& p, const K& a) {
    Poly<K> r;
    Poly<K> xa = Poly<K>::x();
    xa.c[0] = a;
    for (size_t i = p.c.size(); i-- > 0;) {
        r = r * xa;
        r = r + Poly<K>(p.c[i]);
    }
    return r;
}

// p(x + k), integer k
template<class K>
Poly<K> shift_poly(const Poly<K>& p, long k) {
    if (k == 0) return p;
    return taylor_shift(p, K(k));
}

template<class K>
Poly<K> poly_pow(const Poly<K>& p, unsigned long e) {
    Poly<K> r(1), b = p;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// squarefree part (char 0)
template<class K>
Poly<K> squarefree_part(const Poly<K>& p) {
    if (p.degree() <= 0) return Poly<K>(1);
    return (p / poly_gcd(p, p.derivative())).monic();
}

// Yun squarefree decomposition: p = lc * prod f_i^i, f_i monic squarefree pairwise coprime
template<class K>
std::vector<std::pair<Poly<K>, long>> squarefree_decomposition(const Poly<K>& p) {
    std::vector<std::pair<Poly<K>, long>> out;
    if (p.degree() <= 0) return out;
    Poly<K> a = p.monic();
    Poly<K> g = poly_gcd(a, a.derivative());
    Poly<K> b = a / g, d = a.derivative() / g - b.derivative();
    long i = 1;
    while (b.degree() > 0) {
        Poly<K> f = poly_gcd(b, d);
        if (f.degree() > 0) out.push_back({f, i});
        b = b / f;
        d = d / f - b.derivative();
        ++i;
    }
    return out;
}

inline Rat exact_div(const Rat& a, const Rat& b) { return a / b; }
template<class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) { return a / b; }

// Resultant via Bareiss (fraction-free) on the Sylvester matrix; works over any
// integral domain D with exact division (used with D = Poly<field> for Res_x in k).
template<class D>
D sylvester_resultant(const std::vector<D>& p, const std::vector<D>& q) {
    const long m = static_cast<long>(p.size()) - 1, n = static_cast<long>(q.size()) - 1;
    check(m >= 0 && n >= 0, "resultant of zero polynomial");
    if (m == 0) { D r(1); for (long i = 0; i < n; ++i) r = r * p[0]; return r; }
    if (n == 0) { D r(1); for (long i = 0; i < m; ++i) r = r * q[0]; return r; }
    const long N = m + n;
    std::vector<std::vector<D>> a(static_cast<size_t>(N), std::vector<D>(static_cast<size_t>(N), D(0)));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) a[i][i + j] = p[static_cast<size_t>(m - j)];
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) a[n + i][i + j] = q[static_cast<size_t>(n - j)];
    D denom(1);
    long sign = 1;
    for (long k = 0; k < N - 1; ++k) {
        if (oretel::is_zero(a[k][k])) {
            long piv = -1;
            for (long i = k + 1; i < N; ++i)
                if (!oretel::is_zero(a[i][k])) { piv = i; break; }
            if (piv < 0) return D(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (long i = k + 1; i < N; ++i) {
            for (long j = k + 1; j < N; ++j) {
                D num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = exact_div(num, denom);
            }
            a[i][k] = D(0);
        }
        denom = a[k][k];
    }
    D r = a[static_cast<size_t>(N - 1)][static_cast<size_t>(N - 1)];
    return sign < 0 ? D(0) - r : r;
}

template<class K>
K resultant(const Poly<K>& p, const Poly<K>& q) {
    if (p.is_zero() || q.is_zero()) return K(0);
    std::vector<K> pc = p.c, qc = q.c;
    return sylvester_resultant<K>(pc, qc);
}

} // namespace oretel

#endif
