#ifndef ORETEL_OREALG_HPP
#define ORETEL_OREALG_HPP

#include "shiftops.hpp"
#include "matrix.hpp"
#include <memory>

namespace oretel {

// Element of K(x)[S], S f = sigma(f) S
template<class K>
struct OreOp {
    std::vector<RatFn<K>> c; // coefficient of S^i

    OreOp() = default;
    explicit OreOp(std::vector<RatFn<K>> cs) : c(std::move(cs)) { trim(); }

    void trim() { while (!c.empty() && c.back().is_zero()) c.pop_back(); }
    bool is_zero() const { return c.empty(); }
    long order() const { return static_cast<long>(c.size()) - 1; }
    RatFn<K> coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c.size())) return RatFn<K>(0);
        return c[static_cast<size_t>(i)];
    }

    static OreOp S(long power = 1) {
        OreOp op;
        op.c.assign(static_cast<size_t>(power) + 1, RatFn<K>(0));
        op.c.back() = RatFn<K>(1);
        return op;
    }
    static OreOp scalar(const RatFn<K>& f) { return OreOp(std::vector<RatFn<K>>{f}); }

    friend OreOp operator+(const OreOp& a, const OreOp& b) {
        OreOp r;
        r.c.resize(std::max(a.c.size(), b.c.size()), RatFn<K>(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
        r.trim();
        return r;
    }
    friend OreOp operator-(const OreOp& a, const OreOp& b) {
        OreOp r;
        r.c.resize(std::max(a.c.size(), b.c.size()), RatFn<K>(0));
        for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
        r.trim();
        return r;
    }
    // Ore product: (sum a_i S^i)(sum b_j S^j) = sum_i sum_j a_i sigma^i(b_j) S^{i+j}
    friend OreOp operator*(const OreOp& a, const OreOp& b) {
        OreOp r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, RatFn<K>(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; j < b.c.size(); ++j) {
                if (b.c[j].is_zero()) continue;
                r.c[i + j] += a.c[i] * shift_ratfn(b.c[j], static_cast<long>(i));
            }
        }
        r.trim();
        return r;
    }
    friend bool operator==(const OreOp& a, const OreOp& b) { return a.c == b.c; }
};

// Annihilating operator L = l_0 + ... + l_r S^r with polynomial coefficients,
// l_0 l_r != 0, defining A = K(x)[S]/<L>.
template<class K>
struct AnnCtx {
    std::vector<Poly<K>> ell; // l_0..l_r
    long r = 0;

    AnnCtx() = default;
    explicit AnnCtx(std::vector<Poly<K>> coeffs) : ell(std::move(coeffs)) {
        while (!ell.empty() && ell.back().is_zero()) ell.pop_back();
        r = static_cast<long>(ell.size()) - 1;
        check(r >= 1, "operator must have positive order");
        check(!ell[0].is_zero(), "trailing coefficient l_0 must be nonzero");
        // strip polynomial content
        Poly<K> g = ell[0];
        for (long i = 1; i <= r; ++i) g = poly_gcd(g, ell[static_cast<size_t>(i)]);
        if (g.degree() > 0)
            for (auto& l : ell) l = l / g;
        const K lead = ell[static_cast<size_t>(r)].lc();
        for (auto& l : ell) l = l * (K(1) / lead);
    }

    static AnnCtx from_op(const OreOp<K>& op) {
        check(!op.is_zero(), "zero operator");
        Poly<K> den(1);
        for (auto& f : op.c) den = poly_lcm(den, f.den);
        std::vector<Poly<K>> coeffs;
        for (auto& f : op.c) coeffs.push_back(f.num * (den / f.den));
        return AnnCtx(std::move(coeffs));
    }

    Poly<K> l0lr() const { return ell[0] * ell[static_cast<size_t>(r)]; }

    OreOp<K> as_op() const {
        std::vector<RatFn<K>> cs;
        for (auto& l : ell) cs.push_back(RatFn<K>(l));
        return OreOp<K>(std::move(cs));
    }
};

template<class K> using AnnCtxPtr = std::shared_ptr<const AnnCtx<K>>;

template<class K> struct Frame;
template<class K> using FramePtr = std::shared_ptr<const Frame<K>>;

// Vector space basis W = T U of A with cached shift matrices
//   S W = (1/e) M W      and      W = (1/ftil) N S W,
// e, ftil monic, M, N polynomial with content coprime to e resp. ftil.
template<class K>
struct Frame {
    AnnCtxPtr<K> ctx;
    std::string name;
    Mat<RatFn<K>> T, Tinv;
    Poly<K> e;
    Mat<Poly<K>> M;
    Poly<K> ftil;
    Mat<Poly<K>> N;

    size_t dim() const { return T.nr; }
};

namespace framedetail {

// split a rational matrix G as (1/e) M with e monic, M polynomial,
// gcd(e, content(M)) = 1
template<class K>
void clear_denominators(const Mat<RatFn<K>>& G, Poly<K>& e, Mat<Poly<K>>& M) {
    e = Poly<K>(1);
    for (auto& entry : G.a) e = poly_lcm(e, entry.den);
    M = Mat<Poly<K>>(G.nr, G.nc);
    for (size_t i = 0; i < G.a.size(); ++i)
        M.a[i] = G.a[i].num * (e / G.a[i].den);
    Poly<K> content;
    for (auto& entry : M.a) content = poly_gcd(content, entry);
    Poly<K> g = poly_gcd(content, e);
    if (g.degree() > 0) {
        e = e / g;
        for (auto& entry : M.a) entry = entry / g;
    }
    const K lead = e.lc();
    if (!(lead == K(1))) {
        e = e.monic();
        const K inv = K(1) / lead;
        for (auto& entry : M.a) entry = entry * inv;
    }
}

template<class K>
Mat<RatFn<K>> sigma_mat(const Mat<RatFn<K>>& m, long k = 1) {
    Mat<RatFn<K>> r(m.nr, m.nc);
    for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = shift_ratfn(m.a[i], k);
    return r;
}

// companion matrix of S on the standard frame: S U = G U
template<class K>
Mat<RatFn<K>> standard_shift_matrix(const AnnCtx<K>& ctx) {
    const size_t r = static_cast<size_t>(ctx.r);
    Mat<RatFn<K>> G(r, r);
    for (size_t i = 0; i + 1 < r; ++i) G(i, i + 1) = RatFn<K>(1);
    RatFn<K> lr(ctx.ell[r]);
    for (size_t j = 0; j < r; ++j)
        G(r - 1, j) = -RatFn<K>(ctx.ell[j]) / lr;
    return G;
}

} // namespace framedetail

template<class K>
FramePtr<K> make_frame(AnnCtxPtr<K> ctx, Mat<RatFn<K>> T, std::string name = "") {
    auto fr = std::make_shared<Frame<K>>();
    fr->ctx = ctx;
    fr->name = std::move(name);
    fr->Tinv = inverse(T);
    fr->T = std::move(T);
    Mat<RatFn<K>> GS = framedetail::standard_shift_matrix(*ctx);
    Mat<RatFn<K>> GW = framedetail::sigma_mat(fr->T) * GS * fr->Tinv;
    framedetail::clear_denominators(GW, fr->e, fr->M);
    Mat<RatFn<K>> GWinv = inverse(GW);
    framedetail::clear_denominators(GWinv, fr->ftil, fr->N);
    return fr;
}

template<class K>
FramePtr<K> standard_frame(AnnCtxPtr<K> ctx) {
    const size_t r = static_cast<size_t>(ctx->r);
    Mat<RatFn<K>> T = Mat<RatFn<K>>::identity(r);
    return make_frame(ctx, std::move(T), "standard");
}

// Element of A expressed in a frame: f = sum coord_i W_i
template<class K>
struct ModElem {
    FramePtr<K> frame;
    std::vector<RatFn<K>> coord;

    ModElem() = default;
    ModElem(FramePtr<K> fr, std::vector<RatFn<K>> co) : frame(std::move(fr)), coord(std::move(co)) {
        check(coord.size() == frame->dim(), "coordinate size mismatch");
    }

    bool is_zero() const {
        for (auto& v : coord) if (!v.is_zero()) return false;
        return true;
    }

    std::vector<RatFn<K>> standard_coords() const { return vec_mat(coord, frame->T); }

    OreOp<K> as_operator() const { return OreOp<K>(standard_coords()); }
};

template<class K>
ModElem<K> zero_elem(FramePtr<K> fr) {
    return ModElem<K>(fr, std::vector<RatFn<K>>(fr->dim(), RatFn<K>(0)));
}

template<class K>
ModElem<K> change_frame(const ModElem<K>& f, const FramePtr<K>& target) {
    if (f.frame == target) return f;
    check(f.frame->ctx == target->ctx, "frames over different operators");
    return ModElem<K>(target, vec_mat(f.standard_coords(), target->Tinv));
}

template<class K>
ModElem<K> operator+(const ModElem<K>& a, const ModElem<K>& b) {
    ModElem<K> bb = change_frame(b, a.frame);
    std::vector<RatFn<K>> co = a.coord;
    for (size_t i = 0; i < co.size(); ++i) co[i] += bb.coord[i];
    return ModElem<K>(a.frame, std::move(co));
}

template<class K>
ModElem<K> operator-(const ModElem<K>& a, const ModElem<K>& b) {
    ModElem<K> bb = change_frame(b, a.frame);
    std::vector<RatFn<K>> co = a.coord;
    for (size_t i = 0; i < co.size(); ++i) co[i] -= bb.coord[i];
    return ModElem<K>(a.frame, std::move(co));
}

template<class K>
ModElem<K> operator*(const RatFn<K>& s, const ModElem<K>& f) {
    std::vector<RatFn<K>> co = f.coord;
    for (auto& v : co) v *= s;
    return ModElem<K>(f.frame, std::move(co));
}

template<class K>
bool equal_in_A(const ModElem<K>& a, const ModElem<K>& b) {
    return a.standard_coords() == b.standard_coords();
}

// coords of S f in the same frame: sigma(coord) (1/e) M
template<class K>
ModElem<K> apply_S(const ModElem<K>& f) {
    const Frame<K>& fr = *f.frame;
    std::vector<RatFn<K>> sc(f.coord.size());
    for (size_t i = 0; i < sc.size(); ++i) sc[i] = shift_ratfn(f.coord[i], 1);
    std::vector<RatFn<K>> out(sc.size(), RatFn<K>(0));
    RatFn<K> einv = RatFn<K>(1) / RatFn<K>(fr.e);
    for (size_t i = 0; i < sc.size(); ++i) {
        if (sc[i].is_zero()) continue;
        for (size_t j = 0; j < sc.size(); ++j)
            out[j] += sc[i] * RatFn<K>(fr.M(i, j));
    }
    for (auto& v : out) v *= einv;
    return ModElem<K>(f.frame, std::move(out));
}

// g with S g = f:  g = sigma^{-1}(coord (1/ftil) N)
template<class K>
ModElem<K> apply_S_inverse(const ModElem<K>& f) {
    const Frame<K>& fr = *f.frame;
    std::vector<RatFn<K>> out(f.coord.size(), RatFn<K>(0));
    for (size_t i = 0; i < f.coord.size(); ++i) {
        if (f.coord[i].is_zero()) continue;
        for (size_t j = 0; j < f.coord.size(); ++j)
            out[j] += f.coord[i] * RatFn<K>(fr.N(i, j));
    }
    RatFn<K> finv = RatFn<K>(1) / RatFn<K>(fr.ftil);
    for (auto& v : out) v = shift_ratfn(v * finv, -1);
    return ModElem<K>(f.frame, std::move(out));
}

template<class K>
ModElem<K> delta(const ModElem<K>& f) { return apply_S(f) - f; }

// P mod <L> in the given frame (right division by L)
template<class K>
ModElem<K> normal_form(const OreOp<K>& P, const FramePtr<K>& frame) {
    const AnnCtx<K>& ctx = *frame->ctx;
    const long r = ctx.r;
    std::vector<RatFn<K>> c = P.c;
    while (static_cast<long>(c.size()) - 1 >= r) {
        const long k = static_cast<long>(c.size()) - 1;
        RatFn<K> lead = c.back();
        if (!lead.is_zero()) {
            // subtract (lead / sigma^{k-r}(l_r)) S^{k-r} L
            RatFn<K> f = lead / shift_ratfn(RatFn<K>(ctx.ell[static_cast<size_t>(r)]), k - r);
            for (long i = 0; i <= r; ++i)
                c[static_cast<size_t>(k - r + i)] -= f * shift_ratfn(RatFn<K>(ctx.ell[static_cast<size_t>(i)]), k - r);
        }
        c.pop_back();
    }
    c.resize(static_cast<size_t>(r), RatFn<K>(0));
    // c holds standard coordinates; move them into the requested frame
    return ModElem<K>(frame, vec_mat(c, frame->Tinv));
}

// multiplication in A: (P_f * P_g) mod L where f = P_f + <L>
template<class K>
ModElem<K> mul_in_A(const ModElem<K>& f, const OreOp<K>& g) {
    OreOp<K> prod = f.as_operator() * g;
    return normal_form(prod, f.frame);
}

} // namespace oretel

#endif
