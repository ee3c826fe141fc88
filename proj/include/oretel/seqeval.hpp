#ifndef ORETEL_SEQEVAL_HPP
#define ORETEL_SEQEVAL_HPP

#include "orealg.hpp"
#include <functional>

namespace oretel {

// exact values of a P-recursive sequence on an integer range
struct SequenceTable {
    long x0 = 0;
    std::vector<Rat> v;

    bool covers(long x) const { return x >= x0 && x < x0 + static_cast<long>(v.size()); }
    const Rat& at(long x) const {
        check(covers(x), "sequence value outside the unrolled range");
        return v[static_cast<size_t>(x - x0)];
    }
};

// forward unrolling of L u = 0 from r initial values at x0
inline SequenceTable eval_sequence(const std::vector<Poly<Rat>>& ell, const std::vector<Rat>& init,
                                   long x0, long x1) {
    const long r = static_cast<long>(ell.size()) - 1;
    check(static_cast<long>(init.size()) == r, "need exactly r initial values");
    check(x1 >= x0 + r - 1, "range too small for the initial block");
    SequenceTable t;
    t.x0 = x0;
    t.v = init;
    for (long x = x0 + r; x <= x1; ++x) {
        const long z = x - r; // recurrence anchored at z
        Rat lr = ell[static_cast<size_t>(r)].eval<Rat>(Rat(z));
        check(!is_zero(lr), "leading coefficient vanishes at x = " + std::to_string(z + r) +
                                " - r; cannot unroll through the singularity");
        Rat acc(0);
        for (long i = 0; i < r; ++i)
            acc += ell[static_cast<size_t>(i)].eval<Rat>(Rat(z)) * t.at(z + i);
        t.v.push_back(Rat(-acc / lr));
    }
    return t;
}

inline Rat eval_ratfn_at(const RatFn<Rat>& f, const Rat& x) {
    Rat den = f.den.eval<Rat>(x);
    check(!is_zero(den), "denominator vanishes at evaluation point");
    return Rat(f.num.eval<Rat>(x) / den);
}

// (f . u)(x) = sum_i f_i(x) u(x+i) for f by standard coordinates
inline Rat apply_coords_seq(const std::vector<RatFn<Rat>>& std_coords, const SequenceTable& u, long x) {
    Rat acc(0);
    for (size_t i = 0; i < std_coords.size(); ++i) {
        if (std_coords[i].is_zero()) continue;
        acc += eval_ratfn_at(std_coords[i], Rat(x)) * u.at(x + static_cast<long>(i));
    }
    return acc;
}

struct VerifyReport {
    bool ok = true;
    std::vector<long> failures;
};

// pointwise check of f = Delta g + h against every solution generated from
// unit initial vectors
inline VerifyReport verify_decomposition_seq(const AnnCtx<Rat>& ctx,
                                             const std::vector<RatFn<Rat>>& f,
                                             const std::vector<RatFn<Rat>>& g,
                                             const std::vector<RatFn<Rat>>& h,
                                             long from, long to) {
    VerifyReport rep;
    const long r = ctx.r;
    for (long j = 0; j < r; ++j) {
        std::vector<Rat> init(static_cast<size_t>(r), Rat(0));
        init[static_cast<size_t>(j)] = 1;
        SequenceTable u = eval_sequence(ctx.ell, init, from, to + r);
        for (long x = from; x <= to; ++x) {
            bool sing = false;
            for (auto& c : f)
                if (!c.is_zero() && is_zero(c.den.eval<Rat>(Rat(x)))) sing = true;
            for (auto& c : g)
                if (!c.is_zero() && (is_zero(c.den.eval<Rat>(Rat(x))) || is_zero(c.den.eval<Rat>(Rat(x + 1))))) sing = true;
            for (auto& c : h)
                if (!c.is_zero() && is_zero(c.den.eval<Rat>(Rat(x)))) sing = true;
            if (sing) continue;
            Rat lhs = apply_coords_seq(f, u, x);
            Rat gshift(0);
            for (size_t i = 0; i < g.size(); ++i) {
                if (g[i].is_zero()) continue;
                gshift += eval_ratfn_at(g[i], Rat(x + 1)) * u.at(x + 1 + static_cast<long>(i));
            }
            Rat rhs = gshift - apply_coords_seq(g, u, x) + apply_coords_seq(h, u, x);
            if (!(lhs == rhs)) {
                rep.ok = false;
                rep.failures.push_back(x);
            }
        }
    }
    return rep;
}

// ---------- bivariate oracle ----------

using BiSeq = std::function<Rat(long x, long t)>;

inline Rat eval_qt_at(const QT& c, const Rat& t) {
    Rat den = c.den.eval<Rat>(t);
    check(!is_zero(den), "t-denominator vanishes at evaluation point");
    return Rat(c.num.eval<Rat>(t) / den);
}

inline Rat eval_ratfn_qt_at(const RatFn<QT>& f, long x, long t) {
    auto at = [&](const Poly<QT>& p) {
        Rat acc(0), xp(1);
        for (long i = 0; i <= p.degree(); ++i) {
            acc += eval_qt_at(p.coeff(i), Rat(t)) * xp;
            xp *= Rat(x);
        }
        return acc;
    };
    Rat den = at(f.den);
    check(!is_zero(den), "denominator vanishes at evaluation point");
    return Rat(at(f.num) / den);
}

// (f . F)(x, t) = sum_i f_i(x, t) F(x+i, t)
inline Rat apply_coords_biseq(const std::vector<RatFn<QT>>& std_coords, const BiSeq& F, long x, long t) {
    Rat acc(0);
    for (size_t i = 0; i < std_coords.size(); ++i) {
        if (std_coords[i].is_zero()) continue;
        acc += eval_ratfn_qt_at(std_coords[i], x, t) * F(x + static_cast<long>(i), t);
    }
    return acc;
}

inline bool biseq_singular(const std::vector<RatFn<QT>>& coords, long x, long t) {
    for (auto& c : coords) {
        if (c.is_zero()) continue;
        for (auto& qc : c.den.c)
            if (is_zero(qc.den.eval<Rat>(Rat(t)))) return true;
        Rat den(0), xp(1);
        for (long i = 0; i <= c.den.degree(); ++i) {
            Rat dv = c.den.coeff(i).den.eval<Rat>(Rat(t));
            if (is_zero(dv)) return true;
            den += c.den.coeff(i).num.eval<Rat>(Rat(t)) / dv * xp;
            xp *= Rat(x);
        }
        if (is_zero(den)) return true;
    }
    return false;
}

// pointwise check of sum_i c_i(t) (f . F)(x, t+i) = (g . F)(x+1, t) - (g . F)(x, t)
inline VerifyReport verify_telescoper_biseq(const std::vector<QT>& coeffs,
                                            const std::vector<RatFn<QT>>& f_std,
                                            const std::vector<RatFn<QT>>& g_std,
                                            const BiSeq& F, long x_from, long x_to,
                                            long t_from, long t_to) {
    VerifyReport rep;
    for (long t = t_from; t <= t_to; ++t)
        for (long x = x_from; x <= x_to; ++x) {
            bool sing = biseq_singular(g_std, x, t) || biseq_singular(g_std, x + 1, t);
            for (size_t i = 0; i < coeffs.size() && !sing; ++i) {
                if (is_zero(coeffs[i].den.eval<Rat>(Rat(t)))) sing = true;
                if (!sing) sing = biseq_singular(f_std, x, t + static_cast<long>(i));
            }
            if (sing) continue;
            Rat lhs(0);
            for (size_t i = 0; i < coeffs.size(); ++i) {
                if (coeffs[i].is_zero()) continue;
                lhs += eval_qt_at(coeffs[i], Rat(t)) * apply_coords_biseq(f_std, F, x, t + static_cast<long>(i));
            }
            Rat rhs(0);
            for (size_t i = 0; i < g_std.size(); ++i) {
                if (g_std[i].is_zero()) continue;
                rhs += eval_ratfn_qt_at(g_std[i], x + 1, t) * F(x + 1 + static_cast<long>(i), t);
            }
            rhs -= apply_coords_biseq(g_std, F, x, t);
            if (!(lhs == rhs)) {
                rep.ok = false;
                rep.failures.push_back(x * 1000 + t);
            }
        }
    return rep;
}

} // namespace oretel

#endif
