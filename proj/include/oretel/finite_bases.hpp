#ifndef ORETEL_FINITE_BASES_HPP
#define ORETEL_FINITE_BASES_HPP

#include "localval.hpp"

namespace oretel {

struct ValConfig {
    long initial_order = 20;
    long max_order = 160;
    long iteration_cap = 256;
};

// One shift-orbit of singularities.  Points are root(rep) + m; rep is the
// minimal polynomial of the leftmost root, so root offsets start at 0.
template<class K>
struct Orbit {
    Poly<K> rep;
    std::vector<long> roots; // sorted, roots[0] == 0
    long beta = 0;           // chosen upper point, >= roots.back()

    Poly<K> point_minpoly(long m) const { return shift_poly(rep, -m); }
    std::vector<long> z_offsets() const {
        std::vector<long> z;
        for (long m = roots.front() + 1; m <= beta; ++m) z.push_back(m);
        return z;
    }
};

template<class K>
std::vector<Orbit<K>> singular_orbits(const AnnCtx<K>& ctx) {
    std::vector<Orbit<K>> out;
    Poly<K> p = ctx.l0lr();
    if (p.degree() < 1) return out;
    for (auto& cls : shift_classes(p)) {
        // member at class shift s is rep(x+s) with roots root(rep) - s; the
        // leftmost root belongs to the largest shift
        long smax = cls.shifts.back();
        Orbit<K> orb;
        orb.rep = shift_poly(cls.rep, smax);
        for (auto it = cls.shifts.rbegin(); it != cls.shifts.rend(); ++it)
            orb.roots.push_back(smax - *it);
        orb.beta = orb.roots.back();
        out.push_back(std::move(orb));
    }
    return out;
}

// Lazily grown, precision-escalating local solution basis for one orbit.
template<class K>
class ValEngine {
public:
    ValEngine(AnnCtxPtr<K> ctx, Poly<K> rep, long zeta, ValConfig cfg = {})
        : ctx_(std::move(ctx)), rep_(std::move(rep)), zeta_(zeta), cfg_(cfg) {}

    void ensure_window(long lo, long hi) {
        lo = std::min(lo, zeta_);
        hi = std::max(hi, zeta_ + ctx_->r - 1);
        if (basis_ && basis_->lo <= lo && basis_->hi >= hi) return;
        lo = std::min(lo, basis_ ? basis_->lo : lo);
        hi = std::max(hi, basis_ ? basis_->hi : hi);
        basis_ = solution_basis<K>(ctx_, rep_, zeta_, lo, hi, order_);
    }

    ValResult val(const std::vector<RatFn<K>>& std_coords, long m) {
        ensure_window(m, m + ctx_->r - 1);
        while (true) {
            try {
                return val_at(std_coords, *basis_, m);
            } catch (const precision_error&) {
                escalate();
            }
        }
    }

    ValResult val(const ModElem<K>& f, long m) { return val(f.standard_coords(), m); }

    // [q^0] coefficients of (g . b_j)(point m) for all j; requires val(g) >= 0
    std::vector<ExtElem<K>> leading_row(const std::vector<RatFn<K>>& std_coords, long m) {
        ensure_window(m, m + ctx_->r - 1);
        while (true) {
            bool ok = true;
            std::vector<ExtElem<K>> row;
            for (size_t j = 0; j < basis_->vals.size(); ++j) {
                QSeries<K> s = apply_to_solution(std_coords, *basis_, j, m);
                if (s.known <= 0) { ok = false; break; }
                auto v = s.valuation();
                check(!v || *v >= 0, "leading row of a non-integral element");
                row.push_back(s.coeff(0));
            }
            if (ok) return row;
            escalate();
        }
    }

    const LocalBasis<K>& basis() const { return *basis_; }
    ExtCtxPtr<K> ext() const { return basis_->ext; }

private:
    AnnCtxPtr<K> ctx_;
    Poly<K> rep_;
    long zeta_;
    ValConfig cfg_;
    long order_ = 0;
    std::optional<LocalBasis<K>> basis_;

    void escalate() {
        check(order_ * 2 <= cfg_.max_order, "requested precision unattainable within configured max working order");
        order_ *= 2;
        basis_ = solution_basis<K>(ctx_, rep_, zeta_, basis_->lo, basis_->hi, order_);
    }

public:
    void init_order(long o) { order_ = o; }
};

template<class K>
ValEngine<K> make_val_engine(AnnCtxPtr<K> ctx, const Poly<K>& rep, long zeta, ValConfig cfg = {}) {
    ValEngine<K> e(ctx, rep, zeta, cfg);
    e.init_order(cfg.initial_order);
    return e;
}

namespace fbdetail {

// nullspace over the residue field of the r x r matrix E (rows indexed by
// generators): vectors c with sum_i c_i E[i][j] = 0 for all j
template<class K>
std::vector<std::vector<ExtElem<K>>> left_nullspace(const std::vector<std::vector<ExtElem<K>>>& E) {
    const size_t rows = E.size(), cols = E.empty() ? 0 : E[0].size();
    Mat<ExtElem<K>> m(cols, rows);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m(j, i) = E[i][j];
    return nullspace(m);
}

} // namespace fbdetail

// A batch of improvement points on one orbit: points are root(rep) + m for
// m in offsets; zeta must lie at or left of every root of l_0 l_r in the orbit.
template<class K>
struct OrbitPoints {
    Poly<K> rep;
    long zeta = 0;
    std::vector<long> offsets;
};

// group arbitrary points (given by their minimal polynomials) into orbits and
// compute valid anchors from the singularities of the operator
template<class K>
std::vector<OrbitPoints<K>> group_points(const AnnCtx<K>& ctx, const std::vector<Poly<K>>& minpolys) {
    std::vector<OrbitPoints<K>> out;
    for (auto& mp : minpolys) {
        check(is_irreducible(mp), "point minimal polynomial must be irreducible");
        bool placed = false;
        for (auto& op : out) {
            auto k = shift_equivalent_offset(op.rep, mp);
            if (k) {
                op.offsets.push_back(-*k);
                placed = true;
                break;
            }
        }
        if (placed) continue;
        OrbitPoints<K> op;
        op.rep = mp.monic();
        op.offsets = {0};
        out.push_back(std::move(op));
    }
    for (auto& op : out) {
        std::sort(op.offsets.begin(), op.offsets.end());
        op.offsets.erase(std::unique(op.offsets.begin(), op.offsets.end()), op.offsets.end());
        auto roots = orbit_root_offsets(ctx.l0lr(), op.rep);
        op.zeta = roots.empty() ? op.offsets.front() : std::min(roots.front(), op.offsets.front());
    }
    return out;
}

// Local integral basis of A at the given orbit points, starting from the
// standard basis and improving van-Hoeij style.  The returned frame generates
// the same module as U away from the points.
template<class K>
FramePtr<K> local_integral_basis_at(AnnCtxPtr<K> ctx,
                                    const std::vector<OrbitPoints<K>>& pointsets,
                                    ValConfig cfg = {}) {
    const size_t r = static_cast<size_t>(ctx->r);
    // generator coordinate rows over the standard basis
    std::vector<std::vector<RatFn<K>>> G(r, std::vector<RatFn<K>>(r, RatFn<K>(0)));
    for (size_t i = 0; i < r; ++i) G[i][i] = RatFn<K>(1);

    for (auto& orb : pointsets) {
        auto& zoffs = orb.offsets;
        if (zoffs.empty()) continue;
        ValEngine<K> engine = make_val_engine(ctx, orb.rep, orb.zeta, cfg);
        engine.ensure_window(zoffs.front(), zoffs.back() + ctx->r - 1);
        for (long m : zoffs) {
            Poly<K> pm = shift_poly(orb.rep, -m);
            // make every generator integral at the point
            for (auto& g : G) {
                ValResult v = engine.val(g, m);
                if (v.finite && v.val < 0) {
                    RatFn<K> mult(poly_pow(pm, static_cast<unsigned long>(-v.val)));
                    for (auto& c : g) c *= mult;
                }
            }
            long guard = 0;
            while (true) {
                check(++guard <= cfg.iteration_cap, "integral basis iteration cap exceeded");
                std::vector<std::vector<ExtElem<K>>> E;
                for (auto& g : G) E.push_back(engine.leading_row(g, m));
                auto ns = fbdetail::left_nullspace<K>(E);
                if (ns.empty()) break;
                const auto& c = ns.front();
                size_t k = 0;
                for (size_t i = 0; i < c.size(); ++i)
                    if (!c[i].is_zero()) k = i;
                // new generator (sum_i c_i(x) g_i) / pm
                std::vector<RatFn<K>> gnew(r, RatFn<K>(0));
                for (size_t i = 0; i < G.size(); ++i) {
                    if (c[i].is_zero()) continue;
                    // lift residue-field element to a polynomial in x via y -> x - m
                    Poly<K> ci = taylor_shift(c[i].rep, K(-m));
                    RatFn<K> cif(ci);
                    for (size_t jj = 0; jj < r; ++jj) gnew[jj] += cif * G[i][jj];
                }
                RatFn<K> pminv = RatFn<K>(1) / RatFn<K>(pm);
                for (auto& v : gnew) v *= pminv;
                G[k] = std::move(gnew);
            }
        }
    }

    // canonical form: row Hermite form of the cleared-denominator matrix
    Poly<K> D(1);
    for (auto& g : G)
        for (auto& c : g) D = poly_lcm(D, c.den);
    Mat<Poly<K>> Tint(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            Tint(i, j) = G[i][j].num * (D / G[i][j].den);
    hermite_rows(Tint);
    Mat<RatFn<K>> T(r, r);
    RatFn<K> Dinv = RatFn<K>(1) / RatFn<K>(D);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            T(i, j) = RatFn<K>(Tint(i, j)) * Dinv;
    return make_frame(ctx, std::move(T), "W");
}

template<class K>
struct SuitableBasis {
    FramePtr<K> frame;
    std::vector<Orbit<K>> orbits; // with chosen betas

    std::vector<Poly<K>> beta_minpolys() const {
        std::vector<Poly<K>> out;
        for (auto& orb : orbits) out.push_back(orb.point_minpoly(orb.beta));
        return out;
    }

    // prod_i (x - beta_i) as a polynomial over K: product of the beta minimal
    // polynomials (conjugate-closed)
    Poly<K> beta_product() const {
        Poly<K> p(1);
        for (auto& orb : orbits) p = p * orb.point_minpoly(orb.beta);
        return p;
    }
};

template<class K>
FramePtr<K> local_integral_basis(AnnCtxPtr<K> ctx, const std::vector<Orbit<K>>& orbits,
                                 ValConfig cfg = {}) {
    std::vector<OrbitPoints<K>> pts;
    for (auto& orb : orbits) {
        OrbitPoints<K> op;
        op.rep = orb.rep;
        op.zeta = orb.roots.front();
        op.offsets = orb.z_offsets();
        pts.push_back(std::move(op));
    }
    return local_integral_basis_at(ctx, pts, cfg);
}

// beta policy: beta_i = (largest root offset) + extra, the same extra for
// every orbit, which keeps conjugate orbits aligned
template<class K>
SuitableBasis<K> suitable_basis(AnnCtxPtr<K> ctx, long beta_extra = 0, ValConfig cfg = {}) {
    check(beta_extra >= 0, "beta must not lie left of the largest root");
    SuitableBasis<K> out;
    out.orbits = singular_orbits(*ctx);
    for (auto& orb : out.orbits) orb.beta = orb.roots.back() + beta_extra;
    out.frame = local_integral_basis(ctx, out.orbits, cfg);
    return out;
}

} // namespace oretel

#endif
