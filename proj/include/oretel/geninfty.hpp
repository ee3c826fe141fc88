#ifndef ORETEL_GENINFTY_HPP
#define ORETEL_GENINFTY_HPP

#include "orealg.hpp"
#include "localval.hpp" // QSeries, reused as Puiseux tails in 1/v steps
#include "surd.hpp"

namespace oretel {

template<class K> K k_from_rat(const Rat& r);
template<> inline Rat k_from_rat<Rat>(const Rat& r) { return r; }
template<> inline QT k_from_rat<QT>(const Rat& r) { return QT(r); }

// ---------- iota: exponent valuations ----------

inline Rat t0_coeff_at_infinity(const Rat& a) { return a; }

// coefficient of t^0 in the expansion of f at t = infinity
inline Rat t0_coeff_at_infinity(const QT& f) {
    if (f.is_zero()) return Rat(0);
    const long D = f.num.degree() - f.den.degree();
    if (D < 0) return Rat(0);
    // reverse into power series in tau = 1/t and take [tau^D]
    Poly<Rat> ph, qh;
    for (long i = f.num.degree(); i >= 0; --i) ph.c.push_back(f.num.coeff(i));
    for (long i = f.den.degree(); i >= 0; --i) qh.c.push_back(f.den.coeff(i));
    ph.trim(); qh.trim();
    const long n = D + 1;
    std::vector<Rat> inv(static_cast<size_t>(n), Rat(0));
    Rat q0inv = Rat(1) / qh.coeff(0);
    inv[0] = q0inv;
    for (long k = 1; k < n; ++k) {
        Rat s(0);
        for (long i = 1; i <= std::min<long>(k, qh.degree()); ++i)
            s += qh.coeff(i) * inv[static_cast<size_t>(k - i)];
        inv[static_cast<size_t>(k)] = -s * q0inv;
    }
    Rat out(0);
    for (long i = 0; i <= std::min<long>(D, ph.degree()); ++i)
        out += ph.coeff(i) * inv[static_cast<size_t>(D - i)];
    return out;
}

namespace iotadetail {

// [t^0] of sqrt(disc) at t = infinity, as (value, is_real); the imaginary case
// reports 0 (only the real part enters iota)
inline QuadSurd sqrt_t0(const Rat& disc, bool& real_branch) {
    if (disc >= 0) {
        real_branch = true;
        Int d = disc.get_num() * disc.get_den();
        return QuadSurd(Rat(0), Rat(1) / Rat(disc.get_den()), d);
    }
    real_branch = false;
    return QuadSurd(0);
}

inline QuadSurd sqrt_t0(const QT& disc, bool& real_branch) {
    check(!disc.is_zero(), "sqrt of zero discriminant");
    if (qt_is_rat(disc)) return sqrt_t0(disc.num.coeff(0), real_branch);
    const long e = disc.num.degree() - disc.den.degree();
    Rat c = disc.num.lc() / disc.den.lc();
    if (e % 2 != 0) {
        // expansion runs over half-integer powers of t only, so [t^0] = 0
        real_branch = true; // sign of c at t -> +infinity decides, but Re is 0 anyway
        return QuadSurd(0);
    }
    // disc = c t^e (1 + w), need [tau^{e/2}] of sqrt(1+w), tau = 1/t
    const long half = e / 2;
    if (half < 0) { real_branch = true; return QuadSurd(0); }
    const long n = half + 1;
    auto series_of = [&](const Poly<Rat>& p) {
        std::vector<Rat> s(static_cast<size_t>(n), Rat(0));
        for (long i = 0; i < n && i <= p.degree(); ++i)
            s[static_cast<size_t>(i)] = p.coeff(p.degree() - i);
        return s;
    };
    auto nums = series_of(disc.num), dens = series_of(disc.den);
    // w-series: disc / (c t^e) = nums/dens normalized by leading coefficients
    std::vector<Rat> ratio(static_cast<size_t>(n), Rat(0));
    Rat d0inv = Rat(1) / dens[0];
    for (long k = 0; k < n; ++k) {
        Rat s = nums[static_cast<size_t>(k)];
        for (long i = 1; i <= k; ++i) s -= dens[static_cast<size_t>(i)] * ratio[static_cast<size_t>(k - i)];
        ratio[static_cast<size_t>(k)] = s * d0inv;
    }
    Rat r0inv = Rat(1) / ratio[0];
    for (auto& v : ratio) v *= r0inv; // now 1 + w
    // sqrt(1+w) via the binomial recursion s^2 = 1 + w
    std::vector<Rat> root(static_cast<size_t>(n), Rat(0));
    root[0] = 1;
    for (long k = 1; k < n; ++k) {
        Rat s = ratio[static_cast<size_t>(k)];
        for (long i = 1; i < k; ++i) s -= root[static_cast<size_t>(i)] * root[static_cast<size_t>(k - i)];
        root[static_cast<size_t>(k)] = s / 2;
    }
    Rat gamma = root[static_cast<size_t>(half)];
    if (c > 0) {
        real_branch = true;
        Int d = c.get_num() * c.get_den();
        return QuadSurd(Rat(0), gamma / Rat(c.get_den()), d);
    }
    real_branch = false;
    return QuadSurd(0);
}

} // namespace iotadetail

namespace iotadetail {

// expansion of f at t = infinity: f = sum_{i >= 0} eta_i t^{top - i}
inline void expand_at_infinity(const Rat& f, long depth, long& top, std::vector<Rat>& eta) {
    top = 0;
    eta.assign(static_cast<size_t>(depth), Rat(0));
    if (depth > 0) eta[0] = f;
}

inline void expand_at_infinity(const QT& f, long depth, long& top, std::vector<Rat>& eta) {
    eta.assign(static_cast<size_t>(depth), Rat(0));
    top = 0;
    if (f.is_zero() || depth == 0) return;
    top = f.num.degree() - f.den.degree();
    Poly<Rat> ph, qh;
    for (long i = f.num.degree(); i >= 0; --i) ph.c.push_back(f.num.coeff(i));
    for (long i = f.den.degree(); i >= 0; --i) qh.c.push_back(f.den.coeff(i));
    ph.trim(); qh.trim();
    Rat q0inv = Rat(1) / qh.coeff(0);
    for (long k = 0; k < depth; ++k) {
        Rat s = ph.coeff(k);
        for (long i = 1; i <= k; ++i) s -= qh.coeff(i) * eta[static_cast<size_t>(k - i)];
        eta[static_cast<size_t>(k)] = s * q0inv;
    }
}

// coefficients gamma_j of sqrt(1 + w) where disc = c t^e (1 + w); rational case
inline std::vector<Rat> sqrt_tail_coeffs(const Rat&, long depth) {
    std::vector<Rat> g(static_cast<size_t>(depth), Rat(0));
    if (depth > 0) g[0] = 1;
    return g;
}

inline std::vector<Rat> sqrt_tail_coeffs(const QT& disc, long depth) {
    std::vector<Rat> ratio(static_cast<size_t>(depth), Rat(0));
    Poly<Rat> nh, dh;
    for (long i = disc.num.degree(); i >= 0; --i) nh.c.push_back(disc.num.coeff(i));
    for (long i = disc.den.degree(); i >= 0; --i) dh.c.push_back(disc.den.coeff(i));
    nh.trim(); dh.trim();
    Rat d0inv = Rat(1) / dh.coeff(0);
    for (long k = 0; k < depth; ++k) {
        Rat s = nh.coeff(k);
        for (long i = 1; i <= k; ++i) s -= dh.coeff(i) * ratio[static_cast<size_t>(k - i)];
        ratio[static_cast<size_t>(k)] = s * d0inv;
    }
    Rat r0inv = Rat(1) / ratio[0];
    for (auto& v : ratio) v *= r0inv;
    std::vector<Rat> root(static_cast<size_t>(depth), Rat(0));
    root[0] = 1;
    for (long k = 1; k < depth; ++k) {
        Rat s = ratio[static_cast<size_t>(k)];
        for (long i = 1; i < k; ++i) s -= root[static_cast<size_t>(i)] * root[static_cast<size_t>(k - i)];
        root[static_cast<size_t>(k)] = s / 2;
    }
    return root;
}

} // namespace iotadetail

// iota(s) = Re([t^0] s), minimized over the conjugates represented by s.
template<class K>
QuadSurd iota_min(const ExtElem<K>& s) {
    if (!s.ctx || s.rep.is_constant())
        return QuadSurd(t0_coeff_at_infinity(s.rep.coeff(0)));
    check(s.ctx->degree() == 2, "iota beyond quadratic extensions is not supported");
    // s = e0 + e1 y with y^2 + p y + q = 0, y = (-p +- sqrt(disc))/2
    K e0 = s.rep.coeff(0), e1 = s.rep.coeff(1);
    K p = s.ctx->mod.coeff(1), q = s.ctx->mod.coeff(0);
    K disc = p * p - K(4) * q;
    Rat base = t0_coeff_at_infinity(e0 - e1 * p / K(2));

    // [t^0] of (e1/2) sqrt(disc) for the two branches
    long e_top;
    {
        // leading exponent of disc
        if constexpr (std::is_same_v<K, Rat>) e_top = 0;
        else e_top = disc.num.degree() - disc.den.degree();
    }
    Rat lc_disc;
    if constexpr (std::is_same_v<K, Rat>) lc_disc = disc;
    else lc_disc = disc.num.lc() / disc.den.lc();

    if (e_top % 2 != 0) {
        // sqrt(disc) has only half-integer exponents; no t^0 contribution
        return QuadSurd(base);
    }
    if (lc_disc < 0) {
        // complex conjugate pair: shared real part
        return QuadSurd(base);
    }
    long e1_top;
    std::vector<Rat> eta;
    const long need = std::max<long>(0, e_top / 2) + 64;
    iotadetail::expand_at_infinity(e1, need, e1_top, eta);
    auto gamma = iotadetail::sqrt_tail_coeffs(disc, need);
    // [t^0](e1 sqrt(disc)) = sqrt(lc_disc) * sum_i eta_i gamma_{e1_top + e/2 - i}
    const long total = e1_top + e_top / 2;
    Rat rho(0);
    bool e1_zero = true;
    if constexpr (std::is_same_v<K, Rat>) e1_zero = is_zero(e1);
    else e1_zero = e1.is_zero();
    if (!e1_zero && total >= 0) {
        check(total < need, "iota: expansion depth exceeded");
        for (long i = 0; i <= total && i < need; ++i)
            rho += eta[static_cast<size_t>(i)] * gamma[static_cast<size_t>(total - i)];
    }
    // sqrt(lc_disc) = sqrt(num*den)/den
    Int dsq = lc_disc.get_num() * lc_disc.get_den();
    Rat scale = rho / Rat(2) / Rat(lc_disc.get_den());
    QuadSurd plus(base, scale, dsq), minus(base, -scale, dsq);
    return surd_min(plus, minus);
}

// ---------- generalized series at infinity ----------
//
// A series lives in one exponential class Gamma(x)^{u/v} phi^x exp(p(x^{1/v}))
// and is a finite sum of blocks x^{-s} log(x)^l * tail(x^{-1/v}).  Tails reuse
// QSeries with the exponent measured in 1/v steps.

constexpr long kExactKnown = 1L << 40;

template<class K>
struct GenClass {
    long u = 0, v = 1;
    ExtElem<K> phi{1};
    std::vector<ExtElem<K>> expc; // expc[k-1] * x^{k/v}, k = 1..v-1

    bool same_as(const GenClass& o) const {
        return u == o.u && v == o.v && phi == o.phi && expc == o.expc;
    }
    bool trivial_exp() const {
        for (auto& c : expc) if (!c.is_zero()) return false;
        return true;
    }
};

template<class K>
struct GenBlock {
    ExtElem<K> s;
    long l = 0;
    QSeries<K> tail; // coefficient of x^{-(s + idx/v)} at tail index idx
};

template<class K>
struct GenSeries {
    GenClass<K> cls;
    std::vector<GenBlock<K>> blocks;

    bool truncation_zero() const {
        for (auto& b : blocks) if (b.tail.valuation()) return false;
        return true;
    }
};

namespace gsdetail {

inline std::optional<Rat> as_rational(const Rat& a) { return a; }
inline std::optional<Rat> as_rational(const QT& a) {
    if (!qt_is_rat(a)) return std::nullopt;
    return a.num.coeff(0);
}

// k with s2 = s1 + k/v, if any
template<class K>
std::optional<long> rational_step(const ExtElem<K>& s1, const ExtElem<K>& s2, long v) {
    ExtElem<K> d = s2 - s1;
    if (!d.is_constant()) return std::nullopt;
    auto r = as_rational(d.constant_value());
    if (!r) return std::nullopt;
    Rat scaled = *r * Rat(v);
    if (scaled.get_den() != 1) return std::nullopt;
    return to_long(scaled.get_num());
}

// (1 + 1/x)^e = sum_n binom(e, n) x^{-n} as a tail over 1/v steps, first
// `count` terms (n < count)
template<class K>
QSeries<K> binom_tail(const ExtElem<K>& e, long v, long count) {
    QSeries<K> s;
    s.off = 0;
    s.known = count > 0 ? (count - 1) * v + 1 : 0;
    if (count <= 0) { s.normalize(); return s; }
    s.c.assign(static_cast<size_t>((count - 1) * v + 1), ExtElem<K>(0));
    ExtElem<K> acc(1);
    for (long n = 0; n < count; ++n) {
        if (n > 0) acc = acc * (e - ExtElem<K>(K(n - 1))) / ExtElem<K>(K(n));
        s.c[static_cast<size_t>(n * v)] = acc;
    }
    s.normalize();
    if (s.c.empty()) s.known = (count - 1) * v + 1;
    return s;
}

// log(1+1/x)^p as tails over 1/v steps, p = 0..maxp, to `len` indices
template<class K>
std::vector<QSeries<K>> log_correction_powers(long v, long maxp, long len) {
    std::vector<QSeries<K>> out;
    QSeries<K> one;
    one.off = 0;
    one.c = {ExtElem<K>(1)};
    one.known = len;
    out.push_back(one);
    if (maxp == 0) return out;
    QSeries<K> lam;
    lam.off = v;
    lam.known = len;
    long maxn = len / v;
    for (long n = 1; n <= maxn; ++n) {
        while (static_cast<long>(lam.c.size()) < n * v - v + 1) lam.c.push_back(ExtElem<K>(0));
        Rat coeff = Rat(n % 2 == 1 ? 1 : -1) / Rat(n);
        lam.c[static_cast<size_t>(n * v - v)] = ExtElem<K>(k_from_rat<K>(coeff));
    }
    lam.normalize();
    for (long p = 1; p <= maxp; ++p) out.push_back(qs_mul(out.back(), lam));
    return out;
}

// exp(sum_k c_k ((x+i)^{k/v} - x^{k/v})) as a tail, to `len` indices
template<class K>
QSeries<K> exp_correction(const std::vector<ExtElem<K>>& expc, long v, long i, long len) {
    QSeries<K> one;
    one.off = 0;
    one.c = {ExtElem<K>(1)};
    one.known = len;
    if (i == 0) return one;
    bool any = false;
    for (auto& c : expc) if (!c.is_zero()) any = true;
    if (!any) return one;
    // exponent series T with positive valuation:
    // x^{k/v}((1+i/x)^{k/v} - 1) = sum_{n>=1} binom(k/v,n) i^n x^{(k-nv)/v}
    QSeries<K> T = QSeries<K>::zero(len);
    for (size_t kk = 0; kk < expc.size(); ++kk) {
        if (expc[kk].is_zero()) continue;
        const long k = static_cast<long>(kk) + 1;
        QSeries<K> piece = QSeries<K>::zero(len);
        piece.off = v - k;
        std::vector<ExtElem<K>> coeffs;
        Rat binom(1);
        Rat expo(k, v);
        Rat ipow(1);
        long maxn = (len + k) / v + 1;
        coeffs.assign(static_cast<size_t>(std::max<long>(1, maxn * v)), ExtElem<K>(0));
        for (long n = 1; n <= maxn; ++n) {
            binom = binom * (expo - Rat(n - 1)) / Rat(n);
            ipow = ipow * Rat(i);
            long idx = (n * v - k) - (v - k); // absolute index minus off
            if (idx >= 0 && idx < static_cast<long>(coeffs.size()))
                coeffs[static_cast<size_t>(idx)] = expc[kk] * ExtElem<K>(k_from_rat<K>(binom * ipow));
        }
        piece.c = std::move(coeffs);
        piece.known = len;
        piece.normalize();
        T = qs_add(T, piece);
    }
    // exp(T) = sum T^m / m!
    QSeries<K> out = one, power = one;
    K fact(1);
    long m = 0;
    while (true) {
        ++m;
        fact = fact * K(m);
        power = qs_mul(power, T);
        if (!power.valuation()) break;
        QSeries<K> scaled = power;
        ExtElem<K> finv = ExtElem<K>(1) / ExtElem<K>(fact);
        for (auto& c : scaled.c) c = c * finv;
        out = qs_add(out, scaled);
        if (*power.valuation() > len) break;
    }
    out.known = len;
    return out;
}

} // namespace gsdetail

// add a block into a series, folding into an existing block when the exponent
// differs by a rational multiple of 1/v
template<class K>
void gs_accumulate(GenSeries<K>& dst, const ExtElem<K>& s, long l, QSeries<K> tail) {
    for (auto& b : dst.blocks) {
        if (b.l != l) continue;
        auto k = gsdetail::rational_step(b.s, s, dst.cls.v);
        if (!k) continue;
        QSeries<K> shifted = std::move(tail);
        shifted.off += *k;
        shifted.known += *k;
        b.tail = qs_add(b.tail, shifted);
        return;
    }
    GenBlock<K> nb;
    nb.s = s;
    nb.l = l;
    nb.tail = std::move(tail);
    dst.blocks.push_back(std::move(nb));
}

template<class K>
GenSeries<K> gs_add(const GenSeries<K>& a, const GenSeries<K>& b) {
    check(a.cls.same_as(b.cls), "adding series from different exponential classes");
    GenSeries<K> r = a;
    for (auto& blk : b.blocks) gs_accumulate(r, blk.s, blk.l, blk.tail);
    return r;
}

template<class K>
GenSeries<K> gs_scale(const GenSeries<K>& a, const ExtElem<K>& c) {
    GenSeries<K> r = a;
    for (auto& b : r.blocks)
        for (auto& x : b.tail.c) x = x * c;
    for (auto& b : r.blocks) b.tail.normalize();
    return r;
}

template<class K>
GenSeries<K> gs_neg(const GenSeries<K>& a) { return gs_scale(a, ExtElem<K>(-1)); }

// shift x -> x+1 through the class rules
template<class K>
GenSeries<K> sigma_series(const GenSeries<K>& a) {
    const GenClass<K>& cl = a.cls;
    GenSeries<K> r;
    r.cls = cl;
    long maxl = 0;
    long maxlen = 1;
    for (auto& b : a.blocks) {
        maxl = std::max(maxl, b.l);
        maxlen = std::max(maxlen, b.tail.known - b.tail.off + 1);
    }
    auto logs = gsdetail::log_correction_powers<K>(cl.v, maxl, maxlen + cl.v);
    QSeries<K> E = gsdetail::exp_correction(cl.expc, cl.v, 1, maxlen + cl.v);

    for (auto& b : a.blocks) {
        // sum_m tail_m x^{-(s+m/v)} (1+1/x)^{-(s+m/v)}
        QSeries<K> acc = QSeries<K>::zero(b.tail.known);
        for (long m = b.tail.off; m < b.tail.off + static_cast<long>(b.tail.c.size()); ++m) {
            ExtElem<K> cm = b.tail.coeff(m);
            if (cm.is_zero()) continue;
            long terms = (b.tail.known - m) / cl.v + 2;
            ExtElem<K> expnt = -(b.s + ExtElem<K>(k_from_rat<K>(Rat(m, cl.v))));
            QSeries<K> bs = gsdetail::binom_tail(expnt, cl.v, terms);
            bs.off += m;
            bs.known = b.tail.known;
            for (auto& c : bs.c) c = c * cm;
            acc = qs_add(acc, bs);
        }
        acc = qs_mul(acc, E);
        // (log x + lam)^l
        for (long j = 0; j <= b.l; ++j) {
            // C(l, j) log^j lam^{l-j}
            Rat cb(1);
            for (long i = 0; i < j; ++i) cb = cb * Rat(b.l - i) / Rat(i + 1);
            QSeries<K> part = qs_mul(acc, logs[static_cast<size_t>(b.l - j)]);
            ExtElem<K> cbe(k_from_rat<K>(cb));
            for (auto& c : part.c) c = c * cbe;
            // Gamma rule contributes x^{u/v}: tail indices drop by u
            part.off -= cl.u;
            part.known -= cl.u;
            // phi^{x+1} = phi phi^x
            for (auto& c : part.c) c = c * cl.phi;
            gs_accumulate(r, b.s, j, std::move(part));
        }
    }
    return r;
}

// Laurent expansion of f at infinity as a tail over 1/v steps, `terms` many
// x^{-1}-coefficients
template<class K>
QSeries<K> laurent_tail_at_infinity(const RatFn<K>& f, long v, long terms) {
    QSeries<K> s;
    if (f.is_zero()) { s.known = kExactKnown; return s; }
    const long top = f.num.degree() - f.den.degree(); // leading exponent x^{top}
    s.off = -top * v;
    s.known = s.off + terms * v;
    s.c.assign(static_cast<size_t>((terms - 1) * v + 1), ExtElem<K>(0));
    // series of num(1/y)/den(1/y) * y^{-top} in y = 1/x
    std::vector<K> nh(static_cast<size_t>(terms), K(0)), dh(static_cast<size_t>(terms), K(0));
    for (long i = 0; i <= f.num.degree() && i < terms + f.num.degree() + 1; ++i) {
        long idx = f.num.degree() - i;
        if (idx < terms) nh[static_cast<size_t>(idx)] = f.num.coeff(i);
    }
    for (long i = 0; i <= f.den.degree(); ++i) {
        long idx = f.den.degree() - i;
        if (idx < terms) dh[static_cast<size_t>(idx)] = f.den.coeff(i);
    }
    std::vector<K> ser(static_cast<size_t>(terms), K(0));
    K d0inv = K(1) / dh[0];
    for (long k = 0; k < terms; ++k) {
        K v2 = nh[static_cast<size_t>(k)];
        for (long i = 1; i <= k; ++i) v2 = v2 - dh[static_cast<size_t>(i)] * ser[static_cast<size_t>(k - i)];
        ser[static_cast<size_t>(k)] = v2 * d0inv;
    }
    for (long k = 0; k < terms; ++k)
        if (static_cast<size_t>(k * v) < s.c.size()) s.c[static_cast<size_t>(k * v)] = ExtElem<K>(ser[static_cast<size_t>(k)]);
    s.normalize();
    if (s.c.empty()) { s.off = 0; }
    return s;
}

template<class K>
GenSeries<K> gs_ratfn_mul(const GenSeries<K>& a, const RatFn<K>& f) {
    GenSeries<K> r;
    r.cls = a.cls;
    if (f.is_zero()) {
        for (auto& b : a.blocks) {
            GenBlock<K> nb;
            nb.s = b.s;
            nb.l = b.l;
            nb.tail = QSeries<K>::zero(kExactKnown);
            r.blocks.push_back(nb);
        }
        return r;
    }
    long maxlen = 4;
    for (auto& b : a.blocks)
        maxlen = std::max(maxlen, b.tail.known - b.tail.off + 2);
    QSeries<K> ft = laurent_tail_at_infinity(f, a.cls.v, maxlen / a.cls.v + 2);
    for (auto& b : a.blocks) {
        GenBlock<K> nb;
        nb.s = b.s;
        nb.l = b.l;
        nb.tail = qs_mul(b.tail, ft);
        r.blocks.push_back(std::move(nb));
    }
    return r;
}

// product of two series (exponential data multiplies, blocks convolve)
template<class K>
GenSeries<K> gs_mul(const GenSeries<K>& a, const GenSeries<K>& b) {
    GenSeries<K> r;
    long v = std::lcm(a.cls.v, b.cls.v);
    r.cls.v = v;
    r.cls.u = a.cls.u * (v / a.cls.v) + b.cls.u * (v / b.cls.v);
    r.cls.phi = a.cls.phi * b.cls.phi;
    r.cls.expc.assign(static_cast<size_t>(v - 1), ExtElem<K>(0));
    for (size_t k = 0; k + 1 < static_cast<size_t>(a.cls.v); ++k)
        r.cls.expc[(k + 1) * static_cast<size_t>(v / a.cls.v) - 1] += a.cls.expc[k];
    for (size_t k = 0; k + 1 < static_cast<size_t>(b.cls.v); ++k)
        r.cls.expc[(k + 1) * static_cast<size_t>(v / b.cls.v) - 1] += b.cls.expc[k];
    auto stretch = [&](const QSeries<K>& t, long from_v) {
        if (from_v == v) return t;
        long f = v / from_v;
        QSeries<K> s;
        s.off = t.off * f;
        s.known = t.known * f;
        s.c.assign(t.c.size() ? (t.c.size() - 1) * static_cast<size_t>(f) + 1 : 0, ExtElem<K>(0));
        for (size_t i = 0; i < t.c.size(); ++i) s.c[i * static_cast<size_t>(f)] = t.c[i];
        s.normalize();
        return s;
    };
    for (auto& ba : a.blocks)
        for (auto& bb : b.blocks) {
            QSeries<K> t = qs_mul(stretch(ba.tail, a.cls.v), stretch(bb.tail, b.cls.v));
            gs_accumulate(r, ba.s + bb.s, ba.l + bb.l, std::move(t));
        }
    return r;
}

// nu_infinity with certainty tracking
struct NuInf {
    bool zero = false;  // zero within truncation
    QuadSurd val;       // meaningful when !zero
    bool has_floor = false;
    QuadSurd floor;     // coefficients at levels < floor are certain
};

template<class K>
NuInf nu_inf(const GenSeries<K>& a) {
    NuInf out;
    out.zero = true;
    for (auto& b : a.blocks) {
        QuadSurd base = iota_min(b.s);
        QuadSurd f = base + Rat(b.tail.known, a.cls.v);
        if (!out.has_floor || f < out.floor) { out.floor = f; out.has_floor = true; }
        auto v = b.tail.valuation();
        if (v) {
            QuadSurd val = base + Rat(*v, a.cls.v);
            if (out.zero || val < out.val) { out.val = val; out.zero = false; }
        }
    }
    if (!out.zero && out.has_floor && !(out.val < out.floor))
        throw precision_error("nu_inf not certified at working order");
    return out;
}

// ---------- solutions at infinity ----------

template<class K>
struct InfSolutions {
    std::vector<GenSeries<K>> basis;
    long order = 0; // tail depth in 1/v steps per class
};

namespace gsdetail {

// Puiseux coefficients of C_i(x) = l_i phi^i ((x)_i)^{u/v} E_i(x), anchored at
// the common top exponent; cs[i][m] multiplies x^{(Atop - m)/v}
template<class K>
std::vector<std::vector<ExtElem<K>>> conjugated_coeffs(const AnnCtx<K>& ctx, long u, long v,
                                                       const ExtElem<K>& phi,
                                                       const std::vector<ExtElem<K>>& expc,
                                                       long depth) {
    const long r = ctx.r;
    long atop = std::numeric_limits<long>::min();
    for (long i = 0; i <= r; ++i)
        if (!ctx.ell[static_cast<size_t>(i)].is_zero())
            atop = std::max(atop, v * ctx.ell[static_cast<size_t>(i)].degree() + i * u);
    std::vector<std::vector<ExtElem<K>>> cs(static_cast<size_t>(r) + 1);
    for (long i = 0; i <= r; ++i) {
        auto& out = cs[static_cast<size_t>(i)];
        out.assign(static_cast<size_t>(depth), ExtElem<K>(0));
        const Poly<K>& li = ctx.ell[static_cast<size_t>(i)];
        if (li.is_zero()) continue;
        const long top_i = v * li.degree() + i * u;
        const long shift = atop - top_i; // leading term sits at index `shift`
        // tail of l_i relative to its own top: l_i = x^{deg} (lc + ... x^{-v k})
        QSeries<K> base = QSeries<K>::zero(depth);
        base.off = 0;
        base.c.assign(static_cast<size_t>(std::min<long>(depth, li.degree() * v + 1)), ExtElem<K>(0));
        for (long kdx = 0; kdx <= li.degree(); ++kdx) {
            long idx = kdx * v;
            if (idx < static_cast<long>(base.c.size()))
                base.c[static_cast<size_t>(idx)] = ExtElem<K>(li.coeff(li.degree() - kdx));
        }
        base.normalize();
        base.known = depth;
        // ((x)_i)^{u/v} tail: prod_{j=1}^{i-1} (1+j/x)^{u/v}
        for (long j = 1; j < i; ++j) {
            long terms = depth / v + 2;
            QSeries<K> bs;
            bs.off = 0;
            bs.known = depth;
            bs.c.assign(static_cast<size_t>((terms - 1) * v + 1), ExtElem<K>(0));
            Rat binom(1), expo(u, v), jpow(1);
            bs.c[0] = ExtElem<K>(1);
            for (long n = 1; n < terms; ++n) {
                binom = binom * (expo - Rat(n - 1)) / Rat(n);
                jpow = jpow * Rat(j);
                if (static_cast<size_t>(n * v) < bs.c.size())
                    bs.c[static_cast<size_t>(n * v)] = ExtElem<K>(k_from_rat<K>(binom * jpow));
            }
            bs.normalize();
            bs.known = depth;
            base = qs_mul(base, bs);
            base.known = depth;
        }
        base = qs_mul(base, exp_correction(expc, v, i, depth));
        base.known = depth;
        // phi^i
        ExtElem<K> pp(1);
        for (long j = 0; j < i; ++j) pp = pp * phi;
        for (long m = 0; m < depth; ++m) {
            long idx = m - shift;
            ExtElem<K> cv = (idx >= 0) ? base.coeff(idx) : ExtElem<K>(0);
            out[static_cast<size_t>(m)] = cv * pp;
        }
    }
    return cs;
}

// g_j(w) = sum_{m + n v = j} binom(-w, n) sum_i C_{i,m} i^n
template<class K>
Poly<ExtElem<K>> g_poly(const std::vector<std::vector<ExtElem<K>>>& cs, long v, long j) {
    Poly<ExtElem<K>> out;
    for (long n = 0; n * v <= j; ++n) {
        const long m = j - n * v;
        ExtElem<K> S(0);
        for (size_t i = 0; i < cs.size(); ++i) {
            if (m >= static_cast<long>(cs[i].size())) continue;
            ExtElem<K> ipow(1);
            for (long q = 0; q < n; ++q) ipow = ipow * ExtElem<K>(K(static_cast<long>(i)));
            S += cs[i][static_cast<size_t>(m)] * ipow;
        }
        if (S.is_zero()) continue;
        // binom(-w, n) = prod_{q=0}^{n-1} (-w - q) / n!
        Poly<ExtElem<K>> b(ExtElem<K>(1));
        ExtElem<K> fact(1);
        for (long q = 0; q < n; ++q) {
            Poly<ExtElem<K>> lin;
            lin.c = {ExtElem<K>(K(-q)), ExtElem<K>(-1)};
            b = b * lin;
            fact = fact * ExtElem<K>(K(q + 1));
        }
        b = b * Poly<ExtElem<K>>(S / fact);
        out = out + b;
    }
    return out;
}

// indicial roots of the class: (root, multiplicity) in a common extension
template<class K>
struct IndRoot {
    ExtElem<K> value;
    long mult = 1;
};

// one resonance chain: roots value_base + k/v ordered by k
template<class K>
struct Chain {
    std::vector<IndRoot<K>> roots; // ascending in the rational offset
};

template<class K>
Poly<ExtElem<K>> shift_w(const Poly<ExtElem<K>>& p, const Rat& c) {
    return taylor_shift(p, ExtElem<K>(k_from_rat<K>(c)));
}

template<class K>
RatFn<ExtElem<K>> ratfn_derivative(const RatFn<ExtElem<K>>& f) {
    // (n/d)' = (n' d - n d')/d^2
    return RatFn<ExtElem<K>>(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den);
}

template<class K>
ExtElem<K> ratfn_eval(const RatFn<ExtElem<K>>& f, const ExtElem<K>& v) {
    ExtElem<K> den = f.den.template eval<ExtElem<K>>(v);
    check(!den.is_zero(), "series coefficient has a pole at the indicial root");
    return f.num.template eval<ExtElem<K>>(v) / den;
}

// Solve one exponential class and emit its solutions.
template<class K>
void solve_class(const AnnCtx<K>& ctx, long u, long v, ExtElem<K> phi, long mu,
                 long order, std::vector<GenSeries<K>>& out) {
    std::vector<ExtElem<K>> expc(static_cast<size_t>(v - 1), ExtElem<K>(0));
    const long jcap = v * (mu + 3) + 6;
    const long depth = order + jcap + 2;

    auto cs = conjugated_coeffs(ctx, u, v, phi, expc, depth);

    // exponential part: kill the constant obstructions g_1 .. g_{v-1}
    for (long j = 1; j < v; ++j) {
        Poly<ExtElem<K>> gj = g_poly(cs, v, j);
        if (gj.is_zero()) continue;
        check(gj.degree() == 0, "unexpected indicial term during exponential staging");
        // linear correction through c_{v-j}
        ExtElem<K> D(0);
        for (size_t i = 0; i < cs.size(); ++i)
            D += cs[i][0] * ExtElem<K>(K(static_cast<long>(i)));
        check(!D.is_zero(),
              "ramified class with a multiple edge root is beyond the solver's capability");
        ExtElem<K> beta = D * ExtElem<K>(k_from_rat<K>(Rat(v - j, v)));
        expc[static_cast<size_t>(v - j - 1)] = expc[static_cast<size_t>(v - j - 1)] - gj.coeff(0) / beta;
        cs = conjugated_coeffs(ctx, u, v, phi, expc, depth);
        gj = g_poly(cs, v, j);
        check(gj.is_zero(), "exponential staging failed to cancel an obstruction");
    }

    // first nonvanishing g gives the indicial polynomial
    long jstar = -1;
    Poly<ExtElem<K>> ind;
    for (long j = 1; j <= jcap; ++j) {
        ind = g_poly(cs, v, j);
        if (!ind.is_zero()) { jstar = j; break; }
    }
    check(jstar > 0, "no indicial equation found for exponential class");
    check(ind.degree() >= 1, "inconsistent class: constant indicial polynomial");

    // g_j at all levels needed by the tail recursion
    std::vector<Poly<ExtElem<K>>> gs(static_cast<size_t>(jstar + order + 1));
    for (long j = jstar; j <= jstar + order; ++j) gs[static_cast<size_t>(j)] = g_poly(cs, v, j);

    // indicial roots, possibly in an extension of the base field
    std::vector<IndRoot<K>> roots;
    ExtCtxPtr<K> class_ext;
    for (auto& c : ind.c)
        if (c.ctx) class_ext = c.ctx;
    if (!phi.is_constant() && phi.ctx) class_ext = phi.ctx;
    bool coeffs_constant = true;
    for (auto& c : ind.c)
        if (!c.is_constant()) coeffs_constant = false;
    if (ind.degree() == 1) {
        roots.push_back({-ind.coeff(0) / ind.coeff(1), 1});
    } else if (coeffs_constant) {
        Poly<K> ind_base;
        for (auto& c : ind.c) ind_base.c.push_back(c.constant_value());
        ind_base.trim();
        for (auto& [f, m] : factor_poly(ind_base).factors) {
            if (f.degree() == 1) {
                roots.push_back({ExtElem<K>(-f.coeff(0) / f.coeff(1)), m});
            } else {
                check(!class_ext, "indicial roots require a second extension level");
                auto ext = std::make_shared<ExtCtx<K>>(f);
                roots.push_back({ExtElem<K>::generator(ext), m});
            }
        }
    } else {
        throw oretel_error("unresolved exponent ties beyond extension capability");
    }

    // group roots into resonance chains (difference a rational multiple of 1/v)
    std::vector<Chain<K>> chains;
    for (auto& rt : roots) {
        bool placed = false;
        for (auto& ch : chains) {
            // comparable only inside one representation
            ExtCtxPtr<K> c1 = ch.roots[0].value.ctx, c2 = rt.value.ctx;
            if ((c1 == nullptr) != (c2 == nullptr)) continue;
            if (c1 && c2 && !(c1 == c2 || c1->mod == c2->mod)) continue;
            auto k = rational_step(ch.roots[0].value, rt.value, v);
            if (!k) continue;
            ch.roots.push_back(rt);
            placed = true;
            break;
        }
        if (!placed) chains.push_back(Chain<K>{{rt}});
    }
    for (auto& ch : chains) {
        std::sort(ch.roots.begin(), ch.roots.end(), [&](const IndRoot<K>& a, const IndRoot<K>& b) {
            auto k = rational_step(a.value, b.value, v);
            return k && *k > 0;
        });
    }

    using RE = RatFn<ExtElem<K>>;
    for (auto& ch : chains) {
        long rho = 0;
        // process from the top root downwards
        for (auto it = ch.roots.rbegin(); it != ch.roots.rend(); ++it) {
            const ExtElem<K>& sigma = it->value;
            const long m = it->mult;
            if (rho == 0 && m == 1) {
                // plain series, numeric recursion
                std::vector<ExtElem<K>> a(static_cast<size_t>(order), ExtElem<K>(0));
                a[0] = ExtElem<K>(1);
                for (long k = 1; k < order; ++k) {
                    ExtElem<K> acc(0);
                    for (long kp = 0; kp < k; ++kp) {
                        const Poly<ExtElem<K>>& g = gs[static_cast<size_t>(jstar + k - kp)];
                        if (g.is_zero()) continue;
                        ExtElem<K> shift_pt = sigma + ExtElem<K>(k_from_rat<K>(Rat(kp, v)));
                        acc += a[static_cast<size_t>(kp)] * g.template eval<ExtElem<K>>(shift_pt);
                    }
                    ExtElem<K> lead = gs[static_cast<size_t>(jstar)].template eval<ExtElem<K>>(
                        sigma + ExtElem<K>(k_from_rat<K>(Rat(k, v))));
                    check(!lead.is_zero(), "unexpected resonance in a simple chain");
                    a[static_cast<size_t>(k)] = -(acc / lead);
                }
                GenSeries<K> sol;
                sol.cls.u = u;
                sol.cls.v = v;
                sol.cls.phi = phi;
                sol.cls.expc = expc;
                GenBlock<K> blk;
                blk.s = sigma;
                blk.l = 0;
                blk.tail.off = 0;
                blk.tail.c = std::move(a);
                blk.tail.known = order;
                blk.tail.normalize();
                blk.tail.known = order;
                sol.blocks.push_back(std::move(blk));
                out.push_back(std::move(sol));
            } else {
                // Frobenius: a_0(s) = (s - sigma)^rho, differentiate in s
                Poly<ExtElem<K>> smin;
                smin.c = {-sigma, ExtElem<K>(1)};
                RE a0(poly_pow(smin, static_cast<unsigned long>(rho)));
                std::vector<RE> a(static_cast<size_t>(order), RE(0));
                a[0] = a0;
                Poly<ExtElem<K>> wpoly;
                wpoly.c = {ExtElem<K>(0), ExtElem<K>(1)};
                for (long k = 1; k < order; ++k) {
                    RE acc(0);
                    for (long kp = 0; kp < k; ++kp) {
                        const Poly<ExtElem<K>>& g = gs[static_cast<size_t>(jstar + k - kp)];
                        if (g.is_zero()) continue;
                        acc += a[static_cast<size_t>(kp)] * RE(shift_w<K>(g, Rat(kp, v)));
                    }
                    RE lead(shift_w<K>(gs[static_cast<size_t>(jstar)], Rat(k, v)));
                    a[static_cast<size_t>(k)] = RE(0) - acc / lead;
                }
                const long maxder = rho + m - 1;
                // derivative table da[n][k]
                std::vector<std::vector<RE>> da(static_cast<size_t>(maxder) + 1, a);
                for (long n = 1; n <= maxder; ++n)
                    for (long k = 0; k < order; ++k)
                        da[static_cast<size_t>(n)][static_cast<size_t>(k)] =
                            ratfn_derivative<K>(da[static_cast<size_t>(n - 1)][static_cast<size_t>(k)]);
                for (long jl = rho; jl <= rho + m - 1; ++jl) {
                    GenSeries<K> sol;
                    sol.cls.u = u;
                    sol.cls.v = v;
                    sol.cls.phi = phi;
                    sol.cls.expc = expc;
                    for (long i = 0; i <= jl; ++i) {
                        Rat cb(1);
                        for (long q = 0; q < i; ++q) cb = cb * Rat(jl - q) / Rat(q + 1);
                        if (i % 2 == 1) cb = -cb;
                        QSeries<K> tail;
                        tail.off = 0;
                        tail.known = order;
                        tail.c.assign(static_cast<size_t>(order), ExtElem<K>(0));
                        ExtElem<K> cbe(k_from_rat<K>(cb));
                        bool nonzero = false;
                        for (long k = 0; k < order; ++k) {
                            ExtElem<K> val = ratfn_eval<K>(da[static_cast<size_t>(jl - i)][static_cast<size_t>(k)], sigma) * cbe;
                            tail.c[static_cast<size_t>(k)] = val;
                            if (!val.is_zero()) nonzero = true;
                        }
                        tail.normalize();
                        tail.known = order;
                        if (!nonzero) continue;
                        GenBlock<K> blk;
                        blk.s = sigma;
                        blk.l = i;
                        blk.tail = std::move(tail);
                        sol.blocks.push_back(std::move(blk));
                    }
                    check(!sol.blocks.empty(), "degenerate Frobenius solution");
                    out.push_back(std::move(sol));
                }
            }
            rho += m;
        }
    }
}

} // namespace gsdetail

template<class K>
InfSolutions<K> solutions_at_infinity(AnnCtxPtr<K> ctx, long order = 24) {
    InfSolutions<K> out;
    out.order = order;
    const long r = ctx->r;
    // Newton polygon: upper hull of (i, deg l_i)
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i <= r; ++i)
        if (!ctx->ell[static_cast<size_t>(i)].is_zero())
            pts.push_back({i, ctx->ell[static_cast<size_t>(i)].degree()});
    std::vector<std::pair<long, long>> hull; // vertices, left to right
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b if it is below segment a-p
            if ((b.second - a.second) * (p.first - a.first) <=
                (p.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
        auto [i0, d0] = hull[e];
        auto [i1, d1] = hull[e + 1];
        long g = static_cast<long>(int_gcd(Int(std::abs(d1 - d0)), Int(i1 - i0)).get_si());
        if (g == 0) g = 1;
        long u = -(d1 - d0) / g;
        long v = (i1 - i0) / g;
        // edge polynomial in phi
        Poly<K> chi;
        chi.c.assign(static_cast<size_t>(i1 - i0) + 1, K(0));
        for (long i = i0; i <= i1; ++i) {
            const Poly<K>& li = ctx->ell[static_cast<size_t>(i)];
            if (li.is_zero()) continue;
            // on the edge line?
            if ((li.degree() - d0) * (i1 - i0) == (d1 - d0) * (i - i0))
                chi.c[static_cast<size_t>(i - i0)] = li.lc();
        }
        chi.trim();
        for (auto& [f, mult] : factor_poly(chi).factors) {
            if (f == Poly<K>::x()) continue; // phi = 0 does not occur (l_0 l_r != 0)
            ExtElem<K> phi;
            if (f.degree() == 1) {
                phi = ExtElem<K>(-f.coeff(0) / f.coeff(1));
            } else {
                auto ext = std::make_shared<ExtCtx<K>>(f);
                phi = ExtElem<K>::generator(ext);
            }
            gsdetail::solve_class(*ctx, u, v, phi, mult, order, out.basis);
        }
    }
    check(static_cast<long>(out.basis.size()) == r,
          "wrong number of generalized series solutions: got " +
              std::to_string(out.basis.size()) + " of " + std::to_string(r));
    return out;
}

// f . b for f given by operator coefficients (any length)
template<class K>
GenSeries<K> apply_op_coeffs(const std::vector<RatFn<K>>& coeffs, const GenSeries<K>& b) {
    GenSeries<K> acc;
    acc.cls = b.cls;
    GenSeries<K> shifted = b;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i > 0) shifted = sigma_series(shifted);
        if (coeffs[i].is_zero()) continue;
        GenSeries<K> term = gs_ratfn_mul(shifted, coeffs[i]);
        if (first) { acc = term; first = false; }
        else acc = gs_add(acc, term);
    }
    if (first) {
        acc.cls = b.cls;
        GenBlock<K> blk;
        blk.s = b.blocks.empty() ? ExtElem<K>(0) : b.blocks[0].s;
        blk.tail = QSeries<K>::zero(kExactKnown);
        acc.blocks.push_back(blk);
    }
    return acc;
}

template<class K>
GenSeries<K> apply_elem(const ModElem<K>& f, const GenSeries<K>& b) {
    return apply_op_coeffs(f.standard_coords(), b);
}

// val_infinity(f) = min_j nu(f . b_j)
struct ValInf {
    bool infinite = false; // f acted as zero on the whole basis within truncation
    QuadSurd val;
};

template<class K>
ValInf val_inf(const std::vector<RatFn<K>>& std_coords, const InfSolutions<K>& sols) {
    bool any = false;
    QuadSurd best;
    bool floor_set = false;
    QuadSurd floor;
    for (auto& b : sols.basis) {
        NuInf nu = nu_inf(apply_op_coeffs(std_coords, b));
        if (nu.has_floor && (!floor_set || nu.floor < floor)) { floor = nu.floor; floor_set = true; }
        if (!nu.zero && (!any || nu.val < best)) { best = nu.val; any = true; }
    }
    ValInf out;
    if (!any) { out.infinite = true; return out; }
    if (floor_set && !(best < floor))
        throw precision_error("val_inf not certified at working order");
    out.val = best;
    return out;
}

template<class K>
ValInf val_inf(const ModElem<K>& f, const InfSolutions<K>& sols) {
    return val_inf(f.standard_coords(), sols);
}

// Disc = floor(nu(det(omega_i . b_j)))
template<class K>
Int discriminant(const std::vector<ModElem<K>>& elems, const InfSolutions<K>& sols) {
    const size_t r = elems.size();
    check(r == sols.basis.size(), "discriminant dimension mismatch");
    std::vector<std::vector<GenSeries<K>>> prodmat(r, std::vector<GenSeries<K>>());
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            prodmat[i].push_back(apply_elem(elems[i], sols.basis[j]));
    // Leibniz expansion
    std::vector<size_t> perm(r);
    for (size_t i = 0; i < r; ++i) perm[i] = i;
    bool first = true;
    GenSeries<K> acc;
    do {
        long sgn = 1;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j)
                if (perm[i] > perm[j]) sgn = -sgn;
        GenSeries<K> term = prodmat[0][perm[0]];
        for (size_t i = 1; i < r; ++i) term = gs_mul(term, prodmat[i][perm[i]]);
        if (sgn < 0) term = gs_neg(term);
        if (first) { acc = term; first = false; }
        else acc = gs_add(acc, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    NuInf nu = nu_inf(acc);
    check(!nu.zero, "determinant zero within truncation: frame not a basis or precision exhausted");
    return nu.val.floor();
}

} // namespace oretel

#endif
