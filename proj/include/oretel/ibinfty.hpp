#ifndef ORETEL_IBINFTY_HPP
#define ORETEL_IBINFTY_HPP

#include "geninfty.hpp"
#include "finite_bases.hpp"

namespace oretel {

struct InfConfig {
    long initial_order = 16;
    long max_order = 128;
    long iteration_cap = 256;
};

// precision-escalating wrapper around the series solutions at infinity
template<class K>
class InfEngine {
public:
    InfEngine(AnnCtxPtr<K> ctx, InfConfig cfg = {}) : ctx_(std::move(ctx)), cfg_(cfg) {
        sols_ = solutions_at_infinity(ctx_, cfg_.initial_order);
    }

    const InfSolutions<K>& sols() const { return sols_; }

    template<class F>
    auto with_retry(F&& f) {
        while (true) {
            try {
                return f(sols_);
            } catch (const precision_error&) {
                check(sols_.order * 2 <= cfg_.max_order,
                      "precision exhausted in series at infinity");
                sols_ = solutions_at_infinity(ctx_, sols_.order * 2);
            }
        }
    }

    ValInf val(const ModElem<K>& f) {
        auto sc = f.standard_coords();
        return with_retry([&](const InfSolutions<K>& s) { return val_inf(sc, s); });
    }

private:
    AnnCtxPtr<K> ctx_;
    InfConfig cfg_;
    InfSolutions<K> sols_;
};

template<class K>
struct InfinityBasis {
    FramePtr<K> frame;
    std::vector<long> tau; // set by normalize_at_infinity, empty otherwise
};

namespace ibdetail {

// leading-term rows of the elements at the exact iota level `lev`:
// columns keyed by (solution index, log power, exact exponent)
template<class K>
struct LeadKey {
    size_t j;
    long l;
    ExtElem<K> sexp;
};

template<class K>
std::vector<std::vector<ExtElem<K>>> leading_matrix(
    const std::vector<std::vector<RatFn<K>>>& rows_std,
    const std::vector<size_t>& active, const InfSolutions<K>& sols, const QuadSurd& lev,
    std::vector<LeadKey<K>>& keys) {
    keys.clear();
    std::vector<std::vector<ExtElem<K>>> mat(active.size());
    for (size_t a = 0; a < active.size(); ++a) {
        for (size_t j = 0; j < sols.basis.size(); ++j) {
            GenSeries<K> s = apply_op_coeffs(rows_std[active[a]], sols.basis[j]);
            for (auto& blk : s.blocks) {
                QuadSurd base = iota_min(blk.s);
                for (long idx = blk.tail.off; idx < blk.tail.off + static_cast<long>(blk.tail.c.size()); ++idx) {
                    ExtElem<K> cv = blk.tail.coeff(idx);
                    if (cv.is_zero()) continue;
                    QuadSurd level = base + Rat(idx, s.cls.v);
                    if (!(level == lev)) continue;
                    ExtElem<K> se = blk.s + ExtElem<K>(k_from_rat<K>(Rat(idx, s.cls.v)));
                    size_t col = keys.size();
                    bool found = false;
                    for (size_t kdx = 0; kdx < keys.size(); ++kdx)
                        if (keys[kdx].j == j && keys[kdx].l == blk.l && keys[kdx].sexp == se) {
                            col = kdx;
                            found = true;
                            break;
                        }
                    if (!found) keys.push_back({j, blk.l, se});
                    for (auto& row : mat) row.resize(keys.size(), ExtElem<K>(0));
                    mat[a].resize(keys.size(), ExtElem<K>(0));
                    mat[a][col] += cv;
                }
            }
        }
    }
    size_t ncols = keys.size();
    for (auto& row : mat) row.resize(ncols, ExtElem<K>(0));
    return mat;
}

// nullspace over K of rows of Ext entries (Ext coordinates expanded over the
// K-basis of the extension)
template<class K>
std::vector<std::vector<K>> constant_nullspace(const std::vector<std::vector<ExtElem<K>>>& rows) {
    const size_t n = rows.size();
    if (n == 0) return {};
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    long extdeg = 1;
    for (auto& row : rows)
        for (auto& e : row)
            if (e.ctx) extdeg = std::max(extdeg, e.ctx->degree());
    Mat<K> m(ncols * static_cast<size_t>(extdeg), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t cidx = 0; cidx < ncols; ++cidx)
            for (long d = 0; d < extdeg; ++d)
                m(cidx * static_cast<size_t>(extdeg) + static_cast<size_t>(d), i) =
                    rows[i][cidx].rep.coeff(d);
    return nullspace(m);
}

} // namespace ibdetail

// Bootstrap integral basis at infinity, van Hoeij style with the discriminant
// as the termination witness.  The module at finite places is arbitrary; the
// public entry point below re-anchors it to the suitable basis.
template<class K>
InfinityBasis<K> integral_basis_at_infinity_raw(AnnCtxPtr<K> ctx, InfConfig cfg = {}) {
    const size_t r = static_cast<size_t>(ctx->r);
    InfEngine<K> engine(ctx, cfg);
    auto U = standard_frame(ctx);

    std::vector<std::vector<RatFn<K>>> rows(r, std::vector<RatFn<K>>(r, RatFn<K>(0)));
    for (size_t i = 0; i < r; ++i) rows[i][i] = RatFn<K>(1);
    std::vector<QuadSurd> vals(r);

    auto elem_of = [&](size_t i) { return ModElem<K>(U, rows[i]); };

    auto normalize_row = [&](size_t i) {
        ValInf v = engine.val(elem_of(i));
        check(!v.infinite, "integral basis element vanished");
        Int fl = v.val.floor();
        if (fl != 0) {
            RatFn<K> mult = fl > 0
                ? RatFn<K>(Poly<K>::x(static_cast<long>(to_long(fl))))
                : RatFn<K>(Poly<K>(1), Poly<K>::x(static_cast<long>(to_long(-fl))));
            for (auto& c : rows[i]) c *= mult;
            v.val = v.val - Rat(fl.get_si());
        }
        vals[i] = v.val;
    };

    for (size_t i = 0; i < r; ++i) normalize_row(i);

    std::optional<Int> last_disc;
    long guard = 0;
    while (true) {
        check(++guard <= cfg.iteration_cap, "infinity basis iteration cap exceeded");
        // leading level
        QuadSurd lev = vals[0];
        for (size_t i = 1; i < r; ++i) lev = surd_min(lev, vals[i]);
        std::vector<size_t> active;
        for (size_t i = 0; i < r; ++i)
            if (vals[i] == lev) active.push_back(i);
        std::vector<ibdetail::LeadKey<K>> keys;
        auto ns = engine.with_retry([&](const InfSolutions<K>& s) {
            auto mat = ibdetail::leading_matrix<K>(rows, active, s, lev, keys);
            return ibdetail::constant_nullspace<K>(mat);
        });
        if (ns.empty()) break;
        const auto& c = ns.front();
        size_t k = active[0];
        for (size_t a = 0; a < active.size(); ++a)
            if (!is_zero(c[a])) k = active[a];
        std::vector<RatFn<K>> comb(r, RatFn<K>(0));
        for (size_t a = 0; a < active.size(); ++a) {
            if (is_zero(c[a])) continue;
            RatFn<K> cf = RatFn<K>(Poly<K>(c[a]));
            for (size_t j = 0; j < r; ++j) comb[j] += cf * rows[active[a]][j];
        }
        ValInf v = engine.val(ModElem<K>(U, comb));
        check(!v.infinite, "improvement combination collapsed to zero");
        bool module_grew = v.val >= QuadSurd(1);
        rows[k] = std::move(comb);
        normalize_row(k);
        if (module_grew) {
            // each growth step multiplies the determinant by a constant times
            // a positive power of x, so floor(nu(det)) strictly decreases
            // toward the value of the full integral basis
            std::vector<ModElem<K>> elems;
            for (size_t i = 0; i < r; ++i) elems.push_back(elem_of(i));
            Int disc = engine.with_retry([&](const InfSolutions<K>& s) {
                return discriminant<K>(elems, s);
            });
            if (last_disc) check(disc < *last_disc, "discriminant did not move monotonically");
            last_disc = disc;
        }
    }

    Mat<RatFn<K>> T(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) T(i, j) = rows[i][j];
    InfinityBasis<K> out;
    out.frame = make_frame(ctx, std::move(T), "Vinf");
    return out;
}

// Trager-style normalization at infinity: given a suitable basis W, produce a
// module-equal basis W2 and tau such that V = diag(x^tau) W2 is a local
// integral basis at infinity.
template<class K>
struct NormalizedAtInfinity {
    FramePtr<K> W2;  // row-reduced suitable basis (same C[x]-module as W)
    FramePtr<K> V;   // diag(x^tau) W2, integral basis at infinity
    std::vector<long> tau;
};

template<class K>
NormalizedAtInfinity<K> normalize_at_infinity(const FramePtr<K>& W, AnnCtxPtr<K> ctx,
                                              InfConfig cfg = {}) {
    const size_t r = W->dim();
    InfinityBasis<K> V0 = integral_basis_at_infinity_raw(ctx, cfg);
    Mat<RatFn<K>> P = W->T * inverse(V0.frame->T);
    Mat<RatFn<K>> Wrows = W->T;

    const long NEG = std::numeric_limits<long>::min() / 4;
    auto row_degree = [&](size_t i) {
        long d = NEG;
        for (size_t j = 0; j < r; ++j)
            if (!P(i, j).is_zero()) d = std::max(d, P(i, j).degree());
        return d;
    };

    long guard = 0;
    while (true) {
        check(++guard <= cfg.iteration_cap, "normalization at infinity did not terminate");
        std::vector<long> d(r);
        for (size_t i = 0; i < r; ++i) {
            d[i] = row_degree(i);
            check(d[i] > NEG, "singular transition to the infinity basis");
        }
        Mat<K> LC(r, r);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                const RatFn<K>& f = P(i, j);
                if (!f.is_zero() && f.degree() == d[i])
                    LC(i, j) = f.num.lc() / f.den.lc();
                else
                    LC(i, j) = K(0);
            }
        auto ns = nullspace(LC.transpose()); // row combinations
        if (ns.empty()) {
            std::vector<long> tau(r);
            for (size_t i = 0; i < r; ++i) tau[i] = -d[i];
            NormalizedAtInfinity<K> out;
            out.tau = tau;
            out.W2 = (Wrows == W->T) ? W : make_frame(ctx, Wrows, "W2");
            Mat<RatFn<K>> TV(r, r);
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j) {
                    RatFn<K> xt = tau[i] >= 0 ? RatFn<K>(Poly<K>::x(tau[i]))
                                              : RatFn<K>(Poly<K>(1), Poly<K>::x(-tau[i]));
                    TV(i, j) = xt * Wrows(i, j);
                }
            out.V = make_frame(ctx, std::move(TV), "V");
            return out;
        }
        const auto& c = ns.front();
        // eliminate into the row of largest degree among participants
        size_t k = 0;
        bool found = false;
        for (size_t i = 0; i < r; ++i) {
            if (is_zero(c[i])) continue;
            if (!found || d[i] > d[k] || (d[i] == d[k] && i > k)) { k = i; found = true; }
        }
        check(found, "empty nullspace vector");
        std::vector<RatFn<K>> newP(r, RatFn<K>(0)), newW(r, RatFn<K>(0));
        for (size_t i = 0; i < r; ++i) {
            if (is_zero(c[i])) continue;
            long shift = d[k] - d[i];
            RatFn<K> mult = RatFn<K>(Poly<K>(c[i])) * RatFn<K>(Poly<K>::x(shift));
            for (size_t j = 0; j < r; ++j) {
                newP[j] += mult * P(i, j);
                newW[j] += mult * Wrows(i, j);
            }
        }
        for (size_t j = 0; j < r; ++j) {
            P(k, j) = newP[j];
            Wrows(k, j) = newW[j];
        }
    }
}

// Local integral basis at infinity anchored at the suitable basis: the
// diagonal-power normalization of W, which keeps the C[x]-module of W at the
// finite places.
template<class K>
InfinityBasis<K> integral_basis_at_infinity(AnnCtxPtr<K> ctx, InfConfig cfg = {}) {
    SuitableBasis<K> sb = suitable_basis(ctx, 0);
    NormalizedAtInfinity<K> N = normalize_at_infinity(sb.frame, ctx, cfg);
    InfinityBasis<K> out;
    out.frame = N.V;
    out.tau = N.tau;
    return out;
}

} // namespace oretel

#endif
