#ifndef ORETEL_LOCALVAL_HPP
#define ORETEL_LOCALVAL_HPP

#include "orealg.hpp"
#include "ext.hpp"

namespace oretel {

struct precision_error : oretel_error {
    explicit precision_error(const std::string& m) : oretel_error(m) {}
};

// Truncated Laurent series in q with coefficients in K[y]/<mod>.
// Coefficients of q^e for e < known are exact; nothing is claimed beyond.
template<class K>
struct QSeries {
    long off = 0;
    std::vector<ExtElem<K>> c;
    long known = 0;

    void normalize() {
        size_t lead = 0;
        while (lead < c.size() && c[lead].is_zero()) ++lead;
        if (lead > 0) {
            c.erase(c.begin(), c.begin() + static_cast<long>(lead));
            off += static_cast<long>(lead);
        }
        if (off + static_cast<long>(c.size()) > known)
            c.resize(static_cast<size_t>(std::max<long>(0, known - off)));
        while (!c.empty() && c.back().is_zero()) c.pop_back();
        if (c.empty()) off = 0;
    }

    static QSeries zero(long known_to) { QSeries s; s.known = known_to; return s; }

    ExtElem<K> coeff(long e) const {
        if (e < off || e >= off + static_cast<long>(c.size())) return ExtElem<K>(0);
        return c[static_cast<size_t>(e - off)];
    }

    // smallest exponent with nonzero coefficient; nullopt = zero within truncation
    std::optional<long> valuation() const {
        for (size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) return off + static_cast<long>(i);
        return std::nullopt;
    }
};

template<class K>
QSeries<K> qs_add(const QSeries<K>& a, const QSeries<K>& b) {
    QSeries<K> r;
    r.known = std::min(a.known, b.known);
    if (a.c.empty() && b.c.empty()) { r.normalize(); return r; }
    long lo = a.c.empty() ? b.off : (b.c.empty() ? a.off : std::min(a.off, b.off));
    long hi = std::min(r.known, std::max(a.off + static_cast<long>(a.c.size()),
                                         b.off + static_cast<long>(b.c.size())));
    r.off = lo;
    if (hi > lo) r.c.assign(static_cast<size_t>(hi - lo), ExtElem<K>(0));
    for (long e = lo; e < hi; ++e)
        r.c[static_cast<size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
    r.normalize();
    return r;
}

template<class K>
QSeries<K> qs_neg(QSeries<K> a) {
    for (auto& v : a.c) v = -v;
    return a;
}

template<class K>
QSeries<K> qs_mul(const QSeries<K>& a, const QSeries<K>& b) {
    QSeries<K> r;
    r.known = std::min(a.known + b.off, b.known + a.off);
    if (a.c.empty() || b.c.empty()) {
        // product of (certain) zero with anything is zero to the combined order
        if (a.c.empty() && a.known >= b.known + a.off) r.known = a.known + b.off;
        r.normalize();
        return r;
    }
    r.off = a.off + b.off;
    long len = std::min<long>(static_cast<long>(a.c.size() + b.c.size()) - 1, r.known - r.off);
    if (len <= 0) { r.c.clear(); r.normalize(); return r; }
    r.c.assign(static_cast<size_t>(len), ExtElem<K>(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size() && i + j < static_cast<size_t>(len); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    }
    r.normalize();
    return r;
}

// multiplicative inverse; requires certain leading coefficient
template<class K>
QSeries<K> qs_inv(const QSeries<K>& a) {
    auto v = a.valuation();
    if (!v) throw precision_error("inverting a series that is zero within truncation");
    const long va = *v;
    const long n = a.known - va; // usable unit length
    check(n >= 1, "series inversion with no certain coefficients");
    QSeries<K> r;
    r.off = -va;
    r.known = a.known - 2 * va;
    std::vector<ExtElem<K>> u(static_cast<size_t>(n), ExtElem<K>(0));
    for (long i = 0; i < n; ++i) u[static_cast<size_t>(i)] = a.coeff(va + i);
    std::vector<ExtElem<K>> inv(static_cast<size_t>(n), ExtElem<K>(0));
    ExtElem<K> u0inv = ExtElem<K>(1) / u[0];
    inv[0] = u0inv;
    for (long k = 1; k < n; ++k) {
        ExtElem<K> s(0);
        for (long i = 1; i <= k; ++i) s += u[static_cast<size_t>(i)] * inv[static_cast<size_t>(k - i)];
        inv[static_cast<size_t>(k)] = -(s * u0inv);
    }
    r.c = std::move(inv);
    r.normalize();
    return r;
}

template<class K>
QSeries<K> qs_div(const QSeries<K>& a, const QSeries<K>& b) { return qs_mul(a, qs_inv(b)); }

// p(root + m + q) as an exact q-polynomial, truncated to `cap`
template<class K>
QSeries<K> poly_at_point(const Poly<K>& p, const ExtElem<K>& root, long m, long cap) {
    // Taylor expansion of p(x + q) around x = root + m
    Poly<K> pm = shift_poly(p, m);
    QSeries<K> s;
    s.off = 0;
    s.known = cap;
    Poly<K> d = pm;
    K factorial(1);
    long j = 0;
    while (!d.is_zero() && j < cap) {
        if (j >= 1) factorial = factorial * K(j);
        s.c.push_back(eval_at_ext(d, root) / ExtElem<K>(factorial));
        d = d.derivative();
        ++j;
    }
    s.normalize();
    return s;
}

template<class K>
QSeries<K> ratfn_at_point(const RatFn<K>& f, const ExtElem<K>& root, long m, long cap) {
    QSeries<K> num = poly_at_point(f.num, root, m, cap);
    if (f.den.is_one()) return num;
    return qs_div(num, poly_at_point(f.den, root, m, cap));
}

// Basis b_1..b_r of the local solution space of L on the orbit {theta + m},
// theta a root of the monic irreducible base_rep, with initial block
// b_j(zeta + i - 1) = delta_{i,j}.  The anchor zeta must lie at or left of
// every root of l_0 l_r in the orbit.
template<class K>
struct LocalBasis {
    AnnCtxPtr<K> ctx;
    Poly<K> base_rep;
    ExtCtxPtr<K> ext;
    long zeta = 0;
    long lo = 0, hi = -1;                     // stored offset window [lo, hi]
    std::vector<std::vector<QSeries<K>>> vals; // [j][m - lo]
    long order = 0;

    const QSeries<K>& value(size_t j, long m) const {
        check(m >= lo && m <= hi, "offset outside stored window");
        return vals[j][static_cast<size_t>(m - lo)];
    }
};

// offsets m such that sigma^{-m}(rep) = rep(x - m) divides p
template<class K>
std::vector<long> orbit_root_offsets(const Poly<K>& p, const Poly<K>& rep) {
    std::vector<long> out;
    for (auto& cls : shift_classes(p)) {
        auto k = shift_equivalent_offset(cls.rep, rep);
        if (!k) continue;
        // rep(x) = cls.rep(x + k); member at shift s is cls.rep(x + s) = rep(x - (k - s))
        for (long s : cls.shifts) out.push_back(*k - s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

template<class K>
LocalBasis<K> solution_basis(AnnCtxPtr<K> ctx, const Poly<K>& base_rep, long zeta,
                             long lo, long hi, long order) {
    const long r = ctx->r;
    check(lo <= zeta && zeta + r - 1 <= hi, "window must contain the initial block");
    LocalBasis<K> B;
    B.ctx = ctx;
    B.base_rep = base_rep.monic();
    B.ext = std::make_shared<ExtCtx<K>>(B.base_rep);
    B.zeta = zeta;
    B.lo = lo;
    B.hi = hi;
    B.order = order;
    ExtElem<K> theta = ExtElem<K>::generator(B.ext);

    const size_t nr = static_cast<size_t>(r);
    const size_t width = static_cast<size_t>(hi - lo + 1);
    B.vals.assign(nr, std::vector<QSeries<K>>(width, QSeries<K>::zero(order)));
    for (size_t j = 0; j < nr; ++j) {
        QSeries<K> one;
        one.known = order;
        one.c = {ExtElem<K>(1)};
        B.vals[j][static_cast<size_t>(zeta + static_cast<long>(j) - lo)] = one;
    }

    auto ell_at = [&](long i, long m) {
        return poly_at_point(ctx->ell[static_cast<size_t>(i)], theta, m, order);
    };

    // forward: b(z + r) = -(sum_{i<r} l_i(z+q) b(z+i)) / l_r(z+q), z = point(m)
    for (long m = zeta + r; m <= hi; ++m) {
        const long z = m - r;
        QSeries<K> lr = ell_at(r, z);
        for (size_t j = 0; j < nr; ++j) {
            QSeries<K> acc = QSeries<K>::zero(order);
            for (long i = 0; i < r; ++i)
                acc = qs_add(acc, qs_mul(ell_at(i, z), B.vals[j][static_cast<size_t>(z + i - lo)]));
            B.vals[j][static_cast<size_t>(m - lo)] = qs_neg(qs_div(acc, lr));
        }
    }
    // backward: b(z) = -(sum_{i>0} l_i(z+q) b(z+i)) / l_0(z+q)
    for (long m = zeta - 1; m >= lo; --m) {
        QSeries<K> l0 = ell_at(0, m);
        for (size_t j = 0; j < nr; ++j) {
            QSeries<K> acc = QSeries<K>::zero(order);
            for (long i = 1; i <= r; ++i)
                acc = qs_add(acc, qs_mul(ell_at(i, m), B.vals[j][static_cast<size_t>(m + i - lo)]));
            B.vals[j][static_cast<size_t>(m - lo)] = qs_neg(qs_div(acc, l0));
        }
    }
    return B;
}

// (f . b_j)(point m) for f given by standard coordinates
template<class K>
QSeries<K> apply_to_solution(const std::vector<RatFn<K>>& std_coords, const LocalBasis<K>& B,
                             size_t j, long m) {
    ExtElem<K> theta = ExtElem<K>::generator(B.ext);
    QSeries<K> acc = QSeries<K>::zero(B.order);
    for (size_t i = 0; i < std_coords.size(); ++i) {
        if (std_coords[i].is_zero()) continue;
        QSeries<K> fi = ratfn_at_point(std_coords[i], theta, m, B.order);
        acc = qs_add(acc, qs_mul(fi, B.value(j, m + static_cast<long>(i))));
    }
    return acc;
}

struct ValResult {
    bool finite = true;
    long val = 0;   // meaningful when finite
    long known = 0; // truncation order that certified the answer
};

// val_eta(f) = min_j nu_q((f . b_j)(eta)) at eta = point(m)
template<class K>
ValResult val_at(const std::vector<RatFn<K>>& std_coords, const LocalBasis<K>& B, long m) {
    std::optional<long> best;
    long known = std::numeric_limits<long>::max();
    long zero_floor = std::numeric_limits<long>::max(); // min certified order among all-zero series
    for (size_t j = 0; j < B.vals.size(); ++j) {
        QSeries<K> s = apply_to_solution(std_coords, B, j, m);
        known = std::min(known, s.known);
        auto v = s.valuation();
        if (v) {
            if (!best || *v < *best) best = *v;
        } else {
            zero_floor = std::min(zero_floor, s.known);
        }
    }
    ValResult r;
    r.known = known;
    if (!best) {
        r.finite = false; // zero within truncation
        return r;
    }
    // an all-zero series certified only below *best could hide a smaller value
    if (zero_floor < *best)
        throw precision_error("valuation not certified at working order");
    r.val = *best;
    return r;
}

template<class K>
ValResult val_at(const ModElem<K>& f, const LocalBasis<K>& B, long m) {
    return val_at(f.standard_coords(), B, m);
}

template<class K>
bool is_integral_at(const ModElem<K>& f, const LocalBasis<K>& B, const std::vector<long>& offsets) {
    auto sc = f.standard_coords();
    for (long m : offsets) {
        ValResult v = val_at(sc, B, m);
        if (v.finite && v.val < 0) return false;
    }
    return true;
}

} // namespace oretel

#endif
