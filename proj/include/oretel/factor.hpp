#ifndef ORETEL_FACTOR_HPP
#define ORETEL_FACTOR_HPP

#include "ratfn.hpp"
#include <map>
#include <random>

namespace oretel {

template<class K>
struct FactorResult {
    K unit{1};
    std::vector<std::pair<Poly<K>, long>> factors; // monic irreducible, multiplicity
};

namespace fpdetail {

// arithmetic in F_p, p an odd prime < 2^31
using fp_t = std::uint64_t;

inline fp_t fp_mul(fp_t a, fp_t b, fp_t p) { return static_cast<fp_t>((__uint128_t)a * b % p); }
inline fp_t fp_add(fp_t a, fp_t b, fp_t p) { fp_t r = a + b; return r >= p ? r - p : r; }
inline fp_t fp_sub(fp_t a, fp_t b, fp_t p) { return a >= b ? a - b : a + p - b; }
inline fp_t fp_pow(fp_t a, Int e, fp_t p) {
    fp_t r = 1 % p;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}
inline fp_t fp_inv(fp_t a, fp_t p) { return fp_pow(a, Int(static_cast<long>(p) - 2), p); }

using FpPoly = std::vector<fp_t>; // low-to-high

inline void fpp_trim(FpPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }
inline long fpp_deg(const FpPoly& a) { return static_cast<long>(a.size()) - 1; }

inline FpPoly fpp_mul(const FpPoly& a, const FpPoly& b, fp_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = fp_add(r[i + j], fp_mul(a[i], b[j], p), p);
    }
    fpp_trim(r);
    return r;
}

inline FpPoly fpp_sub(FpPoly a, const FpPoly& b, fp_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = fp_sub(a[i], b[i], p);
    fpp_trim(a);
    return a;
}

inline FpPoly fpp_rem(FpPoly a, const FpPoly& b, fp_t p) {
    const long db = fpp_deg(b);
    const fp_t li = fp_inv(b.back(), p);
    while (fpp_deg(a) >= db) {
        const long d = fpp_deg(a) - db;
        const fp_t f = fp_mul(a.back(), li, p);
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(i + d)] = fp_sub(a[static_cast<size_t>(i + d)], fp_mul(f, b[static_cast<size_t>(i)], p), p);
        fpp_trim(a);
    }
    return a;
}

inline FpPoly fpp_monic(FpPoly a, fp_t p) {
    if (a.empty()) return a;
    const fp_t li = fp_inv(a.back(), p);
    for (auto& v : a) v = fp_mul(v, li, p);
    return a;
}

inline FpPoly fpp_gcd(FpPoly a, FpPoly b, fp_t p) {
    while (!b.empty()) {
        FpPoly r = fpp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fpp_monic(a, p);
}

inline FpPoly fpp_powmod(FpPoly a, Int e, const FpPoly& m, fp_t p) {
    FpPoly r{1};
    a = fpp_rem(std::move(a), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fpp_rem(fpp_mul(r, a, p), m, p);
        a = fpp_rem(fpp_mul(a, a, p), m, p);
        e >>= 1;
    }
    return r;
}

inline FpPoly fpp_deriv(const FpPoly& a, fp_t p) {
    FpPoly r;
    for (size_t i = 1; i < a.size(); ++i)
        r.push_back(fp_mul(a[i], static_cast<fp_t>(i % p), p));
    fpp_trim(r);
    return r;
}

inline FpPoly fpp_div_exact(const FpPoly& a, const FpPoly& b, fp_t p) {
    if (a.empty()) return {};
    check(fpp_deg(a) >= fpp_deg(b), "inexact division mod p");
    FpPoly q(static_cast<size_t>(fpp_deg(a) - fpp_deg(b)) + 1, 0);
    FpPoly rem = a;
    const fp_t li = fp_inv(b.back(), p);
    while (fpp_deg(rem) >= fpp_deg(b)) {
        const long d = fpp_deg(rem) - fpp_deg(b);
        const fp_t f = fp_mul(rem.back(), li, p);
        q[static_cast<size_t>(d)] = f;
        for (long i = 0; i <= fpp_deg(b); ++i)
            rem[static_cast<size_t>(i + d)] = fp_sub(rem[static_cast<size_t>(i + d)], fp_mul(f, b[static_cast<size_t>(i)], p), p);
        fpp_trim(rem);
    }
    check(rem.empty(), "inexact division mod p");
    return q;
}

// Cantor-Zassenhaus equal-degree splitting; f monic squarefree, all
// irreducible factors of degree d.
inline void fpp_edf(const FpPoly& f, long d, fp_t p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    if (fpp_deg(f) == d) { out.push_back(fpp_monic(f, p)); return; }
    const Int exponent = (int_pow(Int(static_cast<long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
    while (true) {
        FpPoly r(static_cast<size_t>(fpp_deg(f)), 0);
        for (auto& v : r) v = rng() % p;
        fpp_trim(r);
        if (fpp_deg(r) < 1) continue;
        FpPoly s = fpp_powmod(r, exponent, f, p);
        if (s.empty()) continue;
        s[0] = fp_sub(s[0], 1, p);
        fpp_trim(s);
        FpPoly g = fpp_gcd(s, f, p);
        if (fpp_deg(g) > 0 && fpp_deg(g) < fpp_deg(f)) {
            fpp_edf(g, d, p, rng, out);
            fpp_edf(fpp_div_exact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// monic squarefree factorization mod p
inline std::vector<FpPoly> fpp_factor_squarefree(FpPoly f, fp_t p) {
    std::vector<FpPoly> out;
    std::mt19937_64 rng(0x5eedf00d);
    FpPoly h{0, 1}; // x
    long d = 0;
    while (2 * (d + 1) <= fpp_deg(f)) {
        ++d;
        h = fpp_powmod(h, Int(static_cast<long>(p)), f, p);
        FpPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = fp_sub(hx[1], 1, p);
        fpp_trim(hx);
        FpPoly g = fpp_gcd(hx, f, p);
        if (fpp_deg(g) > 0) {
            fpp_edf(g, d, p, rng, out);
            f = fpp_div_exact(f, g, p);
            h = fpp_rem(h, f, p);
        }
    }
    if (fpp_deg(f) > 0) out.push_back(fpp_monic(f, p));
    return out;
}

} // namespace fpdetail

namespace zdetail {

using ZPoly = std::vector<Int>;

inline void zp_trim(ZPoly& a) { while (!a.empty() && a.back() == 0) a.pop_back(); }
inline long zp_deg(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    zp_trim(r);
    return r;
}

inline ZPoly zp_sub(ZPoly a, const ZPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    zp_trim(a);
    return a;
}

inline ZPoly zp_add(ZPoly a, const ZPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    zp_trim(a);
    return a;
}

inline ZPoly zp_mod(ZPoly a, const Int& m) {
    for (auto& v : a) { v %= m; if (v < 0) v += m; }
    zp_trim(a);
    return a;
}

inline ZPoly zp_mod_sym(ZPoly a, const Int& m) {
    const Int half = m / 2;
    for (auto& v : a) {
        v %= m;
        if (v < 0) v += m;
        if (v > half) v -= m;
    }
    zp_trim(a);
    return a;
}

// divrem by monic b, all arithmetic mod m
inline void zp_divrem_monic(const ZPoly& a, const ZPoly& b, const Int& m, ZPoly& q, ZPoly& r) {
    r = zp_mod(a, m);
    q.clear();
    const long db = zp_deg(b);
    if (zp_deg(r) >= db) q.assign(static_cast<size_t>(zp_deg(r) - db) + 1, Int(0));
    while (zp_deg(r) >= db) {
        const long d = zp_deg(r) - db;
        const Int f = r.back();
        q[static_cast<size_t>(d)] = f;
        for (long i = 0; i <= db; ++i) {
            Int& rv = r[static_cast<size_t>(i + d)];
            rv = (rv - f * b[static_cast<size_t>(i)]) % m;
            if (rv < 0) rv += m;
        }
        zp_trim(r);
    }
    zp_trim(q);
}

struct HenselPair { ZPoly g, h, s, t; };

// one quadratic lift step: modulus m -> m^2 (von zur Gathen & Gerhard 15.10)
inline void hensel_step(const ZPoly& f, HenselPair& p, const Int& m) {
    const Int m2 = m * m;
    ZPoly e = zp_mod(zp_sub(f, zp_mul(p.g, p.h)), m2);
    ZPoly q, r;
    zp_divrem_monic(zp_mul(p.s, e), p.h, m2, q, r);
    ZPoly gstar = zp_mod(zp_add(zp_add(p.g, zp_mul(p.t, e)), zp_mul(q, p.g)), m2);
    ZPoly hstar = zp_mod(zp_add(p.h, r), m2);
    ZPoly b = zp_mod(zp_sub(zp_add(zp_mul(p.s, gstar), zp_mul(p.t, hstar)), ZPoly{Int(1)}), m2);
    ZPoly c, d;
    zp_divrem_monic(zp_mul(p.s, b), hstar, m2, c, d);
    ZPoly sstar = zp_mod(zp_sub(p.s, d), m2);
    ZPoly tstar = zp_mod(zp_sub(zp_sub(p.t, zp_mul(p.t, b)), zp_mul(c, gstar)), m2);
    p.g = gstar; p.h = hstar; p.s = sstar; p.t = tstar;
}

} // namespace zdetail

namespace detail {

inline Int next_good_prime(Int p) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    return p;
}

// convert between ZPoly mod p and FpPoly
inline fpdetail::FpPoly to_fp(const zdetail::ZPoly& a, fpdetail::fp_t p) {
    fpdetail::FpPoly r;
    for (auto& v : a) {
        Int red = v % static_cast<long>(p);
        if (red < 0) red += static_cast<long>(p);
        r.push_back(red.get_ui());
    }
    fpdetail::fpp_trim(r);
    return r;
}

inline zdetail::ZPoly from_fp(const fpdetail::FpPoly& a) {
    zdetail::ZPoly r;
    for (auto v : a) r.push_back(Int(static_cast<unsigned long>(v)));
    zdetail::zp_trim(r);
    return r;
}

// Multifactor Hensel lifting of a monic integer polynomial f from a monic
// factorization mod p to one mod p^k >= target.
inline std::vector<zdetail::ZPoly>
hensel_tree(const zdetail::ZPoly& f, const std::vector<fpdetail::FpPoly>& facs,
            fpdetail::fp_t p, const Int& target) {
    using namespace zdetail;
    using namespace fpdetail;
    if (facs.size() == 1) {
        Int m(static_cast<long>(p));
        while (m < target) m = m * m;
        return {zp_mod(f, m)};
    }
    const size_t half = facs.size() / 2;
    std::vector<FpPoly> left(facs.begin(), facs.begin() + half), right(facs.begin() + half, facs.end());
    FpPoly gp{1}, hp{1};
    for (auto& x : left) gp = fpp_mul(gp, x, p);
    for (auto& x : right) hp = fpp_mul(hp, x, p);
    // Bezout: s*g + t*h = 1 mod p, deg s < deg h, deg t < deg g
    FpPoly r0 = gp, r1 = hp, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FpPoly q = fpp_div_exact(fpp_sub(r0, fpp_rem(r0, r1, p), p), r1, p);
        FpPoly r2 = fpp_rem(r0, r1, p);
        r0 = r1; r1 = r2;
        FpPoly s2 = fpp_sub(s0, fpp_mul(q, s1, p), p);
        FpPoly t2 = fpp_sub(t0, fpp_mul(q, t1, p), p);
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    check(fpp_deg(r0) == 0, "factors not coprime mod p");
    const fp_t inv = fp_inv(r0[0], p);
    for (auto& v : s0) v = fp_mul(v, inv, p);
    for (auto& v : t0) v = fp_mul(v, inv, p);

    HenselPair pair{from_fp(gp), from_fp(hp), from_fp(s0), from_fp(t0)};
    Int m(static_cast<long>(p));
    while (m < target) {
        hensel_step(f, pair, m);
        m = m * m;
    }
    auto lifted_left = hensel_tree(pair.g, left, p, target);
    auto lifted_right = hensel_tree(pair.h, right, p, target);
    for (auto& x : lifted_right) lifted_left.push_back(std::move(x));
    return lifted_left;
}

inline Int zp_max_abs(const zdetail::ZPoly& a) {
    Int m(0);
    for (auto& v : a) { Int w = abs(v); if (w > m) m = w; }
    return m;
}

// Factor a primitive squarefree f in Z[x], deg >= 1, lc > 0.
// Returns primitive integer factors with positive leading coefficient.
inline std::vector<zdetail::ZPoly> factor_squarefree_z(const zdetail::ZPoly& fin) {
    using namespace zdetail;
    using namespace fpdetail;
    const long n = zp_deg(fin);
    if (n == 1) return {fin};
    const Int l = fin.back();

    // monicize: F(x) = l^(n-1) f(x/l)
    ZPoly F(fin.size());
    for (long i = 0; i <= n; ++i)
        F[static_cast<size_t>(i)] = fin[static_cast<size_t>(i)] * int_pow(l, static_cast<unsigned long>(n - 1 - i >= 0 ? n - 1 - i : 0));
    F[static_cast<size_t>(n)] = 1;

    // prime with F squarefree mod p
    Int pz(10007);
    fp_t p = 0;
    for (int tries = 0; tries < 200; ++tries) {
        pz = next_good_prime(pz);
        p = pz.get_ui();
        FpPoly Fp = to_fp(F, p);
        if (fpp_deg(Fp) != n) continue;
        if (fpp_deg(fpp_gcd(Fp, fpp_deriv(Fp, p), p)) == 0) break;
        p = 0;
    }
    check(p != 0, "no good prime found for factorization");

    auto modular = fpp_factor_squarefree(to_fp(F, p), p);
    if (modular.size() == 1) return {fin};

    // Mignotte-style bound on coefficients of monic factors of F
    Int norm2(0);
    for (auto& v : F) norm2 += v * v;
    Int bound = (int_sqrt(norm2) + 1) * int_pow(Int(2), static_cast<unsigned long>(n + 1)) * 2 + 1;
    auto lifted = hensel_tree(F, modular, p, bound);
    Int M(static_cast<long>(p));
    while (M < bound) M = M * M;

    // subset recombination against F, mapping candidates back through x -> l*x
    std::vector<ZPoly> out;
    std::vector<int> alive(lifted.size(), 1);
    ZPoly Frem = F;
    auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
        ZPoly cand{Int(1)};
        for (size_t i : idx) cand = zp_mod(zp_mul(cand, lifted[i]), M);
        cand = zp_mod_sym(cand, M);
        // quick sanity: constant term must divide constant of Frem when nonzero
        ZPoly q, r;
        // exact integer division check (monic cand)
        {
            ZPoly rem = Frem;
            const long db = zp_deg(cand);
            if (db > zp_deg(Frem)) return false;
            ZPoly quo(static_cast<size_t>(zp_deg(Frem) - db) + 1, Int(0));
            while (zp_deg(rem) >= db) {
                const long d = zp_deg(rem) - db;
                const Int f = rem.back();
                quo[static_cast<size_t>(d)] = f;
                for (long i = 0; i <= db; ++i)
                    rem[static_cast<size_t>(i + d)] -= f * cand[static_cast<size_t>(i)];
                zp_trim(rem);
            }
            if (!rem.empty()) return false;
            q = quo;
        }
        // accept: strip to primitive factor of original f via x -> l*x
        ZPoly g(cand.size());
        Int power(1);
        for (size_t i = 0; i < cand.size(); ++i) { g[i] = cand[i] * power; power *= l; }
        Int content(0);
        for (auto& v : g) content = int_gcd(content, v);
        if (content == 0) return false;
        for (auto& v : g) v /= content;
        if (g.back() < 0) for (auto& v : g) v = -v;
        out.push_back(g);
        Frem = q;
        return true;
    };

    size_t remaining = lifted.size();
    for (size_t sz = 1; sz <= remaining; ++sz) {
        bool progress = true;
        while (progress && sz <= remaining) {
            progress = false;
            std::vector<size_t> pool;
            for (size_t i = 0; i < lifted.size(); ++i) if (alive[i]) pool.push_back(i);
            if (pool.size() < sz) break;
            std::vector<size_t> sel(sz);
            // iterate subsets of pool of size sz
            std::vector<size_t> comb(sz);
            for (size_t i = 0; i < sz; ++i) comb[i] = i;
            while (true) {
                for (size_t i = 0; i < sz; ++i) sel[i] = pool[comb[i]];
                if (2 * sz <= pool.size() || sz == pool.size()) {
                    if (try_subset(sel)) {
                        for (size_t i : sel) alive[i] = 0;
                        remaining -= sz;
                        progress = true;
                        break;
                    }
                }
                long k = static_cast<long>(sz) - 1;
                while (k >= 0 && comb[static_cast<size_t>(k)] == pool.size() - sz + static_cast<size_t>(k)) --k;
                if (k < 0) break;
                ++comb[static_cast<size_t>(k)];
                for (size_t i = static_cast<size_t>(k) + 1; i < sz; ++i) comb[i] = comb[i - 1] + 1;
            }
        }
        if (remaining == 0) break;
    }
    if (zp_deg(Frem) > 0) {
        // leftover is a single irreducible factor of F
        ZPoly g(Frem.size());
        Int power(1);
        for (size_t i = 0; i < Frem.size(); ++i) { g[i] = Frem[i] * power; power *= l; }
        Int content(0);
        for (auto& v : g) content = int_gcd(content, v);
        for (auto& v : g) v /= content;
        if (g.back() < 0) for (auto& v : g) v = -v;
        out.push_back(g);
    }
    return out;
}

} // namespace detail

// full factorization over QQ: unit * prod of monic irreducibles^mult
inline FactorResult<Rat> factor_poly(const Poly<Rat>& f) {
    FactorResult<Rat> res;
    if (f.is_zero()) { res.unit = Rat(0); return res; }
    res.unit = f.lc();
    if (f.degree() == 0) return res;
    auto sqf = squarefree_decomposition(f);
    for (auto& [part, mult] : sqf) {
        // to primitive integer poly
        Int den(1);
        for (auto& c : part.c) den = int_lcm(den, c.get_den());
        zdetail::ZPoly z;
        for (auto& c : part.c) z.push_back(Int(c * Rat(den)));
        Int content(0);
        for (auto& v : z) content = int_gcd(content, v);
        for (auto& v : z) v /= content;
        if (z.back() < 0) for (auto& v : z) v = -v;
        auto factors = detail::factor_squarefree_z(z);
        for (auto& zf : factors) {
            Poly<Rat> pf;
            for (auto& v : zf) pf.c.push_back(Rat(v));
            pf.trim();
            res.factors.push_back({pf.monic(), mult});
        }
    }
    return res;
}

// exact integer roots of a nonzero polynomial over QQ
inline std::vector<Int> integer_roots(const Poly<Rat>& f) {
    check(!f.is_zero(), "integer roots of zero polynomial");
    std::vector<Int> roots;
    auto fac = factor_poly(f);
    for (auto& [p, mult] : fac.factors) {
        (void)mult;
        if (p.degree() != 1) continue;
        Rat r = -p.coeff(0) / p.coeff(1);
        if (r.get_den() == 1) roots.push_back(r.get_num());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ------- factorization over QQ(t) -------

namespace qtdetail {

// truncated power series in tau represented as Poly<Rat>
inline Poly<Rat> ts_mul(const Poly<Rat>& a, const Poly<Rat>& b, long n) {
    Poly<Rat> r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(std::min<size_t>(a.c.size() + b.c.size() - 1, static_cast<size_t>(n)), Rat(0));
    for (size_t i = 0; i < a.c.size() && i < static_cast<size_t>(n); ++i) {
        if (is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size() && i + j < static_cast<size_t>(n); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

inline Poly<Rat> ts_trunc(Poly<Rat> a, long n) {
    if (static_cast<long>(a.c.size()) > n) a.c.resize(static_cast<size_t>(n));
    a.trim();
    return a;
}

// series expansion of p(t)/q(t) around t0 to order n (q(t0) != 0)
inline Poly<Rat> ts_of_ratfn(const QT& f, const Rat& t0, long n) {
    Poly<Rat> num = taylor_shift(f.num, t0), den = taylor_shift(f.den, t0);
    check(!is_zero(den.coeff(0)), "series expansion at a pole");
    Poly<Rat> inv;
    inv.c.assign(static_cast<size_t>(n), Rat(0));
    Rat d0inv = Rat(1) / den.coeff(0);
    inv.c[0] = d0inv;
    for (long k = 1; k < n; ++k) {
        Rat s(0);
        for (long i = 1; i <= std::min<long>(k, den.degree()); ++i)
            s += den.coeff(i) * inv.c[static_cast<size_t>(k - i)];
        inv.c[static_cast<size_t>(k)] = -s * d0inv;
    }
    inv.trim();
    return ts_mul(ts_trunc(num, n), inv, n);
}

// polynomial in x with truncated-series coefficients
using SPoly = std::vector<Poly<Rat>>;

inline void sp_trim(SPoly& a) { while (!a.empty() && a.back().is_zero()) a.pop_back(); }
inline long sp_deg(const SPoly& a) { return static_cast<long>(a.size()) - 1; }

inline SPoly sp_mul(const SPoly& a, const SPoly& b, long n) {
    if (a.empty() || b.empty()) return {};
    SPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = ts_trunc(r[i + j] + ts_mul(a[i], b[j], n), n);
    sp_trim(r);
    return r;
}

inline SPoly sp_sub(SPoly a, const SPoly& b, long n) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] = ts_trunc(a[i] - b[i], n);
    sp_trim(a);
    return a;
}

inline SPoly sp_add(SPoly a, const SPoly& b, long n) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] = ts_trunc(a[i] + b[i], n);
    sp_trim(a);
    return a;
}

inline SPoly sp_trunc_all(SPoly a, long n) {
    for (auto& c : a) c = ts_trunc(c, n);
    sp_trim(a);
    return a;
}

// divrem by b with unit leading series coefficient, all series mod tau^n
inline void sp_divrem(const SPoly& a, const SPoly& b, long n, SPoly& q, SPoly& r) {
    r = sp_trunc_all(a, n);
    q.clear();
    const long db = sp_deg(b);
    check(db >= 0 && !is_zero(b.back().coeff(0)), "series division by non-unit leading coefficient");
    // inverse of leading series
    Poly<Rat> linv;
    {
        const Poly<Rat>& l = b.back();
        linv.c.assign(static_cast<size_t>(n), Rat(0));
        Rat l0inv = Rat(1) / l.coeff(0);
        linv.c[0] = l0inv;
        for (long k = 1; k < n; ++k) {
            Rat s(0);
            for (long i = 1; i <= std::min<long>(k, l.degree()); ++i)
                s += l.coeff(i) * linv.c[static_cast<size_t>(k - i)];
            linv.c[static_cast<size_t>(k)] = -s * l0inv;
        }
        linv.trim();
    }
    if (sp_deg(r) >= db) q.resize(static_cast<size_t>(sp_deg(r) - db) + 1);
    while (sp_deg(r) >= db) {
        const long d = sp_deg(r) - db;
        Poly<Rat> f = ts_mul(r.back(), linv, n);
        q[static_cast<size_t>(d)] = f;
        for (long i = 0; i <= db; ++i)
            r[static_cast<size_t>(i + d)] = ts_trunc(r[static_cast<size_t>(i + d)] - ts_mul(f, b[static_cast<size_t>(i)], n), n);
        sp_trim(r);
    }
    sp_trim(q);
}

struct SHenselPair { SPoly g, h, s, t; };

inline void sp_hensel_step(const SPoly& f, SHenselPair& p, long k) {
    const long k2 = 2 * k;
    SPoly e = sp_sub(sp_trunc_all(f, k2), sp_mul(p.g, p.h, k2), k2);
    SPoly q, r;
    sp_divrem(sp_mul(p.s, e, k2), p.h, k2, q, r);
    SPoly gstar = sp_add(sp_add(p.g, sp_mul(p.t, e, k2), k2), sp_mul(q, p.g, k2), k2);
    SPoly hstar = sp_add(p.h, r, k2);
    SPoly one{Poly<Rat>(1)};
    SPoly b = sp_sub(sp_add(sp_mul(p.s, gstar, k2), sp_mul(p.t, hstar, k2), k2), one, k2);
    SPoly c, d;
    sp_divrem(sp_mul(p.s, b, k2), hstar, k2, c, d);
    p.s = sp_sub(p.s, d, k2);
    p.t = sp_sub(sp_sub(p.t, sp_mul(p.t, b, k2), k2), sp_mul(c, gstar, k2), k2);
    p.g = gstar;
    p.h = hstar;
}

inline std::vector<SPoly>
sp_hensel_tree(const SPoly& f, const std::vector<Poly<Rat>>& facs, long target) {
    if (facs.size() == 1) return {sp_trunc_all(f, target)};
    const size_t half = facs.size() / 2;
    std::vector<Poly<Rat>> left(facs.begin(), facs.begin() + half), right(facs.begin() + half, facs.end());
    Poly<Rat> g0(1), h0(1);
    for (auto& x : left) g0 = g0 * x;
    for (auto& x : right) h0 = h0 * x;
    Poly<Rat> s0, t0;
    Poly<Rat> g = poly_xgcd(g0, h0, s0, t0);
    check(g.degree() == 0 && g.is_one(), "specialized factors not coprime");
    auto lift_poly = [](const Poly<Rat>& p) {
        SPoly r(p.c.size());
        for (size_t i = 0; i < p.c.size(); ++i) r[i] = Poly<Rat>(p.c[i]);
        sp_trim(r);
        return r;
    };
    SHenselPair pair{lift_poly(g0), lift_poly(h0), lift_poly(s0), lift_poly(t0)};
    long k = 1;
    while (k < target) {
        sp_hensel_step(f, pair, k);
        k *= 2;
    }
    auto l = sp_hensel_tree(pair.g, left, target);
    auto r = sp_hensel_tree(pair.h, right, target);
    for (auto& x : r) l.push_back(std::move(x));
    return l;
}

// Pade reconstruction: series s mod tau^n  ->  a/b with deg a, deg b <= dmax,
// b(0) = 1; returns false if none
inline bool pade(const Poly<Rat>& s, long n, long dmax, Poly<Rat>& a, Poly<Rat>& b) {
    Poly<Rat> r0 = Poly<Rat>::x(n), r1 = ts_trunc(s, n);
    Poly<Rat> t0, t1(1);
    while (!r1.is_zero() && r1.degree() > dmax) {
        auto [q, r2] = divrem(r0, r1);
        r0 = r1; r1 = r2;
        Poly<Rat> t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (t1.is_zero() || t1.degree() > dmax) return false;
    if (is_zero(t1.coeff(0))) return false;
    a = r1; b = t1;
    Rat c = Rat(1) / b.coeff(0);
    a = a * c; b = b * c;
    // verify a = s*b mod tau^n
    Poly<Rat> chk = ts_trunc(ts_mul(s, b, n) - a, n);
    return chk.is_zero();
}

} // namespace qtdetail

// full factorization over QQ(t)
inline FactorResult<QT> factor_poly(const Poly<QT>& f) {
    using namespace qtdetail;
    FactorResult<QT> res;
    if (f.is_zero()) { res.unit = QT(0); return res; }
    res.unit = f.lc();
    if (f.degree() == 0) return res;

    auto sqf = squarefree_decomposition(f);
    for (auto& [part0, mult] : sqf) {
        Poly<QT> part = part0.monic();
        const long n = part.degree();
        if (n == 1) { res.factors.push_back({part, mult}); continue; }

        // choose a good rational specialization point
        Rat t0;
        Poly<Rat> f0;
        bool found = false;
        for (long cand = 0; cand < 200 && !found; ++cand) {
            Rat tv(cand % 2 == 0 ? cand / 2 : -(cand / 2 + 1));
            bool ok = true;
            Poly<Rat> spec;
            spec.c.reserve(part.c.size());
            for (auto& c : part.c) {
                Rat dv = c.den.eval<Rat>(tv);
                if (is_zero(dv)) { ok = false; break; }
                spec.c.push_back(c.num.eval<Rat>(tv) / dv);
            }
            if (!ok) continue;
            spec.trim();
            if (spec.degree() != n) continue;
            if (poly_gcd(spec, spec.derivative()).degree() != 0) continue;
            t0 = tv;
            f0 = spec;
            found = true;
        }
        check(found, "no good specialization point for factorization over QQ(t)");

        auto base = factor_poly(f0);
        if (base.factors.size() == 1) { res.factors.push_back({part, mult}); continue; }

        // degree budget for coefficients of factors
        long dt = 0;
        for (auto& c : part.c) dt = std::max(dt, std::max(c.num.degree(), c.den.degree()));
        const long dmax = (dt + 1) * (n + 1);
        const long N = 2 * dmax + 4;

        SPoly fs(part.c.size());
        for (size_t i = 0; i < part.c.size(); ++i) fs[i] = ts_of_ratfn(part.c[i], t0, N);
        sp_trim(fs);

        std::vector<Poly<Rat>> monic0;
        for (auto& [g, m] : base.factors) { (void)m; monic0.push_back(g); }
        auto lifted = sp_hensel_tree(fs, monic0, N);

        std::vector<int> alive(lifted.size(), 1);
        Poly<QT> remnant = part;
        size_t remaining = lifted.size();
        auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
            SPoly cand{Poly<Rat>(1)};
            for (size_t i : idx) cand = sp_mul(cand, lifted[i], N);
            // reconstruct each coefficient as a rational function of t
            Poly<QT> g;
            g.c.resize(cand.size());
            for (size_t i = 0; i < cand.size(); ++i) {
                Poly<Rat> a, b;
                if (!pade(cand[i], N, dmax, a, b)) return false;
                // substitute tau = t - t0
                Poly<Rat> at = taylor_shift(a, Rat(-t0)), bt = taylor_shift(b, Rat(-t0));
                g.c[i] = QT(at, bt);
            }
            g.trim();
            if (g.degree() < 1) return false;
            auto [q, r] = divrem(remnant, g);
            if (!r.is_zero()) return false;
            res.factors.push_back({g.monic(), mult});
            remnant = q;
            return true;
        };

        for (size_t sz = 1; sz <= remaining; ++sz) {
            bool progress = true;
            while (progress && sz <= remaining) {
                progress = false;
                std::vector<size_t> pool;
                for (size_t i = 0; i < lifted.size(); ++i) if (alive[i]) pool.push_back(i);
                if (pool.size() < sz) break;
                std::vector<size_t> comb(sz);
                for (size_t i = 0; i < sz; ++i) comb[i] = i;
                while (true) {
                    std::vector<size_t> sel(sz);
                    for (size_t i = 0; i < sz; ++i) sel[i] = pool[comb[i]];
                    if (2 * sz <= pool.size() || sz == pool.size()) {
                        if (try_subset(sel)) {
                            for (size_t i : sel) alive[i] = 0;
                            remaining -= sz;
                            progress = true;
                            break;
                        }
                    }
                    long k = static_cast<long>(sz) - 1;
                    while (k >= 0 && comb[static_cast<size_t>(k)] == pool.size() - sz + static_cast<size_t>(k)) --k;
                    if (k < 0) break;
                    ++comb[static_cast<size_t>(k)];
                    for (size_t i = static_cast<size_t>(k) + 1; i < sz; ++i) comb[i] = comb[i - 1] + 1;
                }
            }
            if (remaining == 0) break;
        }
        if (remnant.degree() > 0) res.factors.push_back({remnant.monic(), mult});
    }
    return res;
}

template<class K> std::vector<Int> integer_roots_k(const Poly<K>& f);
template<> inline std::vector<Int> integer_roots_k<Rat>(const Poly<Rat>& f) { return integer_roots(f); }
template<> inline std::vector<Int> integer_roots_k<QT>(const Poly<QT>& f) {
    check(!f.is_zero(), "integer roots of zero polynomial");
    // specialize t, collect candidates, verify exactly over QQ(t)
    for (long cand = 0; cand < 200; ++cand) {
        Rat tv(cand % 2 == 0 ? cand / 2 : -(cand / 2 + 1));
        bool ok = true;
        Poly<Rat> spec;
        for (auto& c : f.c) {
            Rat dv = c.den.eval<Rat>(tv);
            if (is_zero(dv)) { ok = false; break; }
            spec.c.push_back(c.num.eval<Rat>(tv) / dv);
        }
        if (!ok) continue;
        spec.trim();
        if (spec.degree() != f.degree()) continue;
        std::vector<Int> out;
        for (auto& r : integer_roots(spec)) {
            QT val = f.eval<QT>(QT(Rat(r)));
            if (val.is_zero()) out.push_back(r);
        }
        return out;
    }
    throw oretel_error("no good specialization point for integer roots over QQ(t)");
}

template<class K>
bool is_irreducible(const Poly<K>& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fac = factor_poly(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

} // namespace oretel

#endif
