#ifndef ORETEL_TELESCOPE_HPP
#define ORETEL_TELESCOPE_HPP

#include "decomp.hpp"

namespace oretel {

// sigma_t on QQ(t) and on objects built over it
inline QT sigma_t(const QT& c, long k = 1) { return shift_ratfn(c, k); }

inline Poly<QT> sigma_t(const Poly<QT>& p, long k = 1) {
    Poly<QT> r = p;
    for (auto& c : r.c) c = sigma_t(c, k);
    r.trim();
    return r;
}

inline RatFn<QT> sigma_t_ratfn(const RatFn<QT>& f, long k = 1) {
    return RatFn<QT>(sigma_t(f.num, k), sigma_t(f.den, k));
}

// Bivariate context: A = K(x)[S_x]/<L> with the extra action
// S_t f = sigma_t(P_f) u_t mod L.
struct BivariateCtx {
    DecompPipeline<QT> D;
    OreOp<QT> ut;
    Mat<RatFn<QT>> Xi; // row k: standard coordinates of S_x^k u_t mod L
};

inline BivariateCtx make_bivariate(DecompPipeline<QT> D, OreOp<QT> ut) {
    BivariateCtx B;
    B.D = std::move(D);
    B.ut = std::move(ut);
    const size_t r = B.D.V->dim();
    auto U = standard_frame(B.D.ctx);
    B.Xi = Mat<RatFn<QT>>(r, r);
    for (size_t k = 0; k < r; ++k) {
        OreOp<QT> op = OreOp<QT>::S(static_cast<long>(k)) * B.ut;
        ModElem<QT> nf = normal_form(op, U);
        for (size_t j = 0; j < r; ++j) B.Xi(k, j) = nf.coord[j];
    }
    return B;
}

inline ModElem<QT> shift_t(const ModElem<QT>& f, const BivariateCtx& B) {
    auto sc = f.standard_coords();
    for (auto& c : sc) c = sigma_t_ratfn(c);
    auto out = vec_mat(sc, B.Xi);
    auto U = standard_frame(B.D.ctx);
    return change_frame(ModElem<QT>(U, std::move(out)), f.frame);
}

struct Telescoper {
    bool found = false;
    std::vector<QT> coeffs; // c_0..c_rho, c_rho != 0
    ModElem<QT> certificate;
    bool have_certificate = false;
    std::vector<AdditiveDecomposition<QT>> remainders; // aligned h-tilde_i
};

namespace teldetail {

// normalize a C(t)-vector to coprime polynomial coefficients in t with a
// positive leading coefficient in the top entry
inline void normalize_coeffs(std::vector<QT>& c) {
    Poly<Rat> den(1);
    for (auto& v : c) den = poly_lcm(den, v.den);
    std::vector<Poly<Rat>> num(c.size());
    for (size_t i = 0; i < c.size(); ++i) num[i] = c[i].num * (den / c[i].den);
    Poly<Rat> g;
    for (auto& n : num) g = poly_gcd(g, n);
    if (g.degree() > 0)
        for (auto& n : num) n = n / g;
    // rational content
    Int numg(0), denl(1);
    for (auto& n : num)
        for (auto& cc : n.c) {
            numg = int_gcd(numg, cc.get_num());
            denl = int_lcm(denl, cc.get_den());
        }
    Rat scale = Rat(denl) / Rat(numg == 0 ? Int(1) : numg);
    for (auto& n : num) n = n * scale;
    // positive leading coefficient of the top nonzero entry
    for (size_t i = c.size(); i-- > 0;) {
        if (num[i].is_zero()) continue;
        if (num[i].lc() < 0)
            for (auto& n : num) n = n * Rat(-1);
        break;
    }
    for (size_t i = 0; i < c.size(); ++i) c[i] = QT(num[i]);
}

// C(t)-linear dependence of coordinate vectors of module elements
inline std::vector<std::vector<QT>> dependence(const std::vector<std::vector<RatFn<QT>>>& vecs) {
    const size_t n = vecs.size();
    if (n == 0) return {};
    const size_t r = vecs[0].size();
    // clear x-denominators per coordinate
    std::vector<Poly<QT>> dens(r, Poly<QT>(1));
    for (auto& v : vecs)
        for (size_t j = 0; j < r; ++j) dens[j] = poly_lcm(dens[j], v[j].den);
    // rows: (coordinate, x-power)
    std::vector<std::vector<QT>> rows;
    long maxdeg = 0;
    std::vector<std::vector<Poly<QT>>> nums(n, std::vector<Poly<QT>>(r));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < r; ++j) {
            nums[i][j] = vecs[i][j].num * (dens[j] / vecs[i][j].den);
            maxdeg = std::max(maxdeg, nums[i][j].degree());
        }
    Mat<QT> M(r * static_cast<size_t>(maxdeg + 1), n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < r; ++j)
            for (long dgr = 0; dgr <= maxdeg; ++dgr)
                M(j * static_cast<size_t>(maxdeg + 1) + static_cast<size_t>(dgr), i) =
                    nums[i][j].coeff(dgr);
    return nullspace(M);
}

} // namespace teldetail

// reduction-based creative telescoping: iterate S_t, align remainders against
// the frozen class representatives, stop at the first C(t)-dependence
inline Telescoper telescoper(const ModElem<QT>& f, const BivariateCtx& B, long max_order = 12,
                             bool want_certificate = true) {
    Telescoper out;
    std::vector<Poly<QT>> frozen; // class representatives fixed by earlier orders
    std::vector<AdditiveDecomposition<QT>> hs;
    std::vector<ModElem<QT>> Gs;
    std::vector<std::vector<RatFn<QT>>> hvecs;

    ModElem<QT> current = change_frame(f, B.D.V);
    ModElem<QT> Gprev = zero_elem(B.D.V);
    for (long m = 0; m <= max_order; ++m) {
        AdditiveDecomposition<QT> dec = additive_decompose(current, B.D, frozen);
        for (auto& cls : shift_classes(dec.d, frozen)) {
            bool known = false;
            for (auto& p : frozen)
                if (shift_equivalent_offset(p, cls.rep)) known = true;
            if (!known) frozen.push_back(cls.rep);
        }
        ModElem<QT> G = Gprev + dec.g;
        ModElem<QT> h = remainder_value(dec, B.D);
        hs.push_back(dec);
        Gs.push_back(G);
        hvecs.push_back(h.standard_coords());

        auto ns = teldetail::dependence(hvecs);
        if (!ns.empty()) {
            std::vector<QT> c = ns.front();
            check(!c.back().is_zero(), "dependence does not involve the top order");
            teldetail::normalize_coeffs(c);
            out.found = true;
            out.coeffs = c;
            out.remainders = hs;
            if (want_certificate) {
                // certificate: sum c_i G_i; S_t^i f = Delta G_i + h_i
                ModElem<QT> g = zero_elem(B.D.V);
                for (size_t i = 0; i < Gs.size(); ++i) {
                    if (c[i].is_zero()) continue;
                    g = g + RatFn<QT>(Poly<QT>(c[i])) * Gs[i];
                }
                out.certificate = g;
                out.have_certificate = true;
                // verify T(f) = Delta g exactly in A
                ModElem<QT> tf = zero_elem(B.D.V);
                ModElem<QT> sif = change_frame(f, B.D.V);
                for (size_t i = 0; i < c.size(); ++i) {
                    if (!c[i].is_zero())
                        tf = tf + RatFn<QT>(Poly<QT>(c[i])) * sif;
                    if (i + 1 < c.size()) sif = shift_t(sif, B);
                }
                check(equal_in_A(tf, delta(g)), "telescoper certificate failed to verify");
            }
            return out;
        }
        // next order: S_t^{m+1} f = Delta(S_t G) + S_t h
        Gprev = shift_t(G, B);
        current = shift_t(h, B);
    }
    return out;
}

} // namespace oretel

#endif
