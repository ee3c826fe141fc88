#ifndef ORETEL_REDINFTY_HPP
#define ORETEL_REDINFTY_HPP

#include "orealg.hpp"
#include "matrix.hpp"

namespace oretel {

// coefficient of x^e in the expansion of f at infinity, for
// e = top, top-1, ..., top-count+1
template<class K>
std::vector<K> laurent_coeffs(const RatFn<K>& f, long top, long count) {
    std::vector<K> out(static_cast<size_t>(count), K(0));
    if (f.is_zero()) return out;
    const long D = f.num.degree() - f.den.degree();
    // series f = sum_{n >= 0} ser[n] x^{D - n}
    const long need = top - D >= 0 ? count + (top - D) : count - (D - top);
    if (need <= 0) return out;
    std::vector<K> nh(static_cast<size_t>(need), K(0)), dh(static_cast<size_t>(need), K(0));
    for (long i = 0; i <= f.num.degree(); ++i) {
        long idx = f.num.degree() - i;
        if (idx < need) nh[static_cast<size_t>(idx)] = f.num.coeff(i);
    }
    for (long i = 0; i <= f.den.degree(); ++i) {
        long idx = f.den.degree() - i;
        if (idx < need) dh[static_cast<size_t>(idx)] = f.den.coeff(i);
    }
    std::vector<K> ser(static_cast<size_t>(need), K(0));
    K d0inv = K(1) / dh[0];
    for (long n = 0; n < need; ++n) {
        K v = nh[static_cast<size_t>(n)];
        for (long i = 1; i <= n; ++i) v = v - dh[static_cast<size_t>(i)] * ser[static_cast<size_t>(n - i)];
        ser[static_cast<size_t>(n)] = v * d0inv;
    }
    for (long j = 0; j < count; ++j) {
        long e = top - j;
        long n = D - e;
        if (n >= 0 && n < need) out[static_cast<size_t>(j)] = ser[static_cast<size_t>(n)];
    }
    return out;
}

// Frame data for the reduction at infinity: Delta V = (1/a) B V and the
// minimal lambda with Delta V = x^lambda M V, M over C(x)_infinity.
template<class K>
struct InfReduction {
    FramePtr<K> V;
    Poly<K> a;
    Mat<Poly<K>> B;
    long lambda = 0;
    bool delta_zero = false; // Delta V = 0 (treated as lambda < -1)

    bool small_lambda() const { return delta_zero || lambda < -1; }
};

template<class K>
InfReduction<K> make_inf_reduction(const FramePtr<K>& V) {
    InfReduction<K> out;
    out.V = V;
    const size_t r = V->dim();
    Mat<RatFn<K>> G(r, r);
    for (size_t i = 0; i < r; ++i) {
        std::vector<RatFn<K>> ei(r, RatFn<K>(0));
        ei[i] = RatFn<K>(1);
        ModElem<K> d = delta(ModElem<K>(V, ei));
        for (size_t j = 0; j < r; ++j) G(i, j) = d.coord[j];
    }
    framedetail::clear_denominators(G, out.a, out.B);
    long degB = std::numeric_limits<long>::min();
    for (auto& b : out.B.a)
        if (!b.is_zero()) degB = std::max(degB, b.degree());
    if (degB == std::numeric_limits<long>::min()) {
        out.delta_zero = true;
        out.lambda = 0;
    } else {
        out.lambda = degB - out.a.degree();
    }
    return out;
}

// psi_i = x^{-k-lambda-1} Delta(x^{k+1} v_i)
template<class K>
std::vector<ModElem<K>> psi_basis(const InfReduction<K>& R, long k) {
    check(!R.small_lambda(), "psi basis requires lambda >= -1");
    const size_t r = R.V->dim();
    std::vector<ModElem<K>> out;
    for (size_t i = 0; i < r; ++i) {
        std::vector<RatFn<K>> co(r, RatFn<K>(0));
        // Delta(x^{k+1} v_i) = Delta(x^{k+1}) v_i + (x+1)^{k+1} (1/a) B_i
        Poly<K> xk1 = Poly<K>::x(k + 1);
        Poly<K> dxk1 = shift_poly(xk1, 1) - xk1;
        co[i] = RatFn<K>(dxk1);
        RatFn<K> sx(shift_poly(xk1, 1));
        RatFn<K> ainv = RatFn<K>(1) / RatFn<K>(R.a);
        for (size_t j = 0; j < r; ++j)
            co[j] += sx * RatFn<K>(R.B(i, j)) * ainv;
        RatFn<K> scale = RatFn<K>(Poly<K>(1), Poly<K>::x(k + R.lambda + 1));
        if (k + R.lambda + 1 < 0) scale = RatFn<K>(Poly<K>::x(-(k + R.lambda + 1)));
        for (auto& c : co) c *= scale;
        out.push_back(ModElem<K>(R.V, std::move(co)));
    }
    return out;
}

// One reduction step: solve for b with
//   sum_i x^{-lambda-1} a_i v_i = sum_i sigma(b_i) psi_i  (mod x^{-lambda-2}),
// b_i = b_{i,0} + ... + b_{i,lambda+1} x^{-(lambda+1)}.
template<class K>
std::vector<RatFn<K>> reduce_once(const InfReduction<K>& R, long k,
                                  const std::vector<RatFn<K>>& avec) {
    const size_t r = R.V->dim();
    std::vector<RatFn<K>> b(r, RatFn<K>(0));
    if (R.small_lambda()) {
        // b_i = (k+1)^{-1} a_i mod x^{-1}
        K inv = K(1) / K(k + 1);
        for (size_t i = 0; i < r; ++i) {
            K c0 = laurent_coeffs(avec[i], 0, 1)[0];
            b[i] = RatFn<K>(Poly<K>(c0 * inv));
        }
        return b;
    }
    const long L = R.lambda;
    const long width = L + 2; // unknown powers x^0..x^{-(L+1)}, equations x^0..x^{-(L+1)}
    auto psis = psi_basis(R, k);
    Mat<K> M(r * static_cast<size_t>(width), r * static_cast<size_t>(width));
    std::vector<K> rhs(r * static_cast<size_t>(width), K(0));
    for (size_t j = 0; j < r; ++j) {
        // LHS: x^{-L-1} a_j
        RatFn<K> lhsf = avec[j] * RatFn<K>(Poly<K>(1), Poly<K>::x(L + 1));
        auto lc = laurent_coeffs(lhsf, 0, width);
        for (long n = 0; n < width; ++n)
            rhs[j * static_cast<size_t>(width) + static_cast<size_t>(n)] = lc[static_cast<size_t>(n)];
        for (size_t i = 0; i < r; ++i) {
            for (long m = 0; m < width; ++m) {
                // sigma(x^{-m}) = (x+1)^{-m}
                RatFn<K> sxm = m == 0 ? RatFn<K>(1)
                                      : RatFn<K>(Poly<K>(1), poly_pow(shift_poly(Poly<K>::x(), 1),
                                                                      static_cast<unsigned long>(m)));
                RatFn<K> entryf = sxm * psis[i].coord[j];
                auto ec = laurent_coeffs(entryf, 0, width);
                for (long n = 0; n < width; ++n)
                    M(j * static_cast<size_t>(width) + static_cast<size_t>(n),
                      i * static_cast<size_t>(width) + static_cast<size_t>(m)) = ec[static_cast<size_t>(n)];
            }
        }
    }
    std::vector<K> sol;
    check(solve_linear(M, rhs, sol),
          "reduction system at infinity unsolvable (integral basis hypothesis violated)");
    for (size_t i = 0; i < r; ++i) {
        RatFn<K> bi(0);
        for (long m = 0; m < width; ++m) {
            K c = sol[i * static_cast<size_t>(width) + static_cast<size_t>(m)];
            if (is_zero(c)) continue;
            RatFn<K> mono = m == 0 ? RatFn<K>(Poly<K>(c))
                                   : RatFn<K>(Poly<K>(c), Poly<K>::x(m));
            bi += mono;
        }
        b[i] = bi;
    }
    return b;
}

// Repeated reduction: f (coordinates over V) = Delta(g) + h with h of
// coefficient degree < max(0, lambda); g has polynomial coordinates.
template<class K>
void reduce_at_infinity(const InfReduction<K>& R, const std::vector<RatFn<K>>& f_in,
                        ModElem<K>& g_out, std::vector<RatFn<K>>& h_out) {
    const size_t r = R.V->dim();
    std::vector<RatFn<K>> f = f_in;
    ModElem<K> g = zero_elem(R.V);
    const long stop = R.small_lambda() ? 0 : std::max<long>(0, R.lambda);
    while (true) {
        long k = std::numeric_limits<long>::min();
        for (auto& c : f)
            if (!c.is_zero()) k = std::max(k, c.degree());
        if (k == std::numeric_limits<long>::min() || k < stop) break;
        k = std::max(k, stop);
        // a_i = f_i x^{-k} in C(x)_inf
        std::vector<RatFn<K>> avec(r);
        RatFn<K> xk = k == 0 ? RatFn<K>(1) : RatFn<K>(Poly<K>(1), Poly<K>::x(k));
        for (size_t i = 0; i < r; ++i) avec[i] = f[i] * xk;
        auto b = reduce_once(R, k, avec);
        // g_step = x^{k+1} b, polynomial coordinates
        std::vector<RatFn<K>> gs(r);
        RatFn<K> xk1(Poly<K>::x(k + 1));
        bool nonzero = false;
        for (size_t i = 0; i < r; ++i) {
            gs[i] = b[i] * xk1;
            check(gs[i].is_polynomial(), "reduction step produced non-polynomial certificate");
            if (!gs[i].is_zero()) nonzero = true;
        }
        ModElem<K> gstep(R.V, gs);
        ModElem<K> dstep = delta(gstep);
        for (size_t i = 0; i < r; ++i) f[i] -= dstep.coord[i];
        for (size_t i = 0; i < r; ++i) g.coord[i] += gs[i];
        long knew = std::numeric_limits<long>::min();
        for (auto& c : f)
            if (!c.is_zero()) knew = std::max(knew, c.degree());
        check(knew < k || (knew == std::numeric_limits<long>::min()),
              "reduction at infinity failed to decrease the degree");
        (void)nonzero;
    }
    g_out = g;
    h_out = f;
}

} // namespace oretel

#endif
