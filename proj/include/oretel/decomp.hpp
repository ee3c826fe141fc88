#ifndef ORETEL_DECOMP_HPP
#define ORETEL_DECOMP_HPP

#include "apred.hpp"
#include "redinfty.hpp"
#include "ibinfty.hpp"

namespace oretel {

// Laurent vector over the window [mu, delta], flattened for elimination with
// columns ordered by exponent descending, then coordinate index.
template<class K>
struct QWindow {
    long mu = 0, delta = -1;
    size_t r = 0;

    size_t cols() const {
        return delta < mu ? 0 : r * static_cast<size_t>(delta - mu + 1);
    }
    size_t col(long n, size_t i) const {
        return static_cast<size_t>(delta - n) * r + i;
    }
};

// Laurent polynomial as a rational function with an x-power denominator;
// extract the window coefficients
template<class K>
bool to_window_flat(const QWindow<K>& win, const std::vector<RatFn<K>>& Q, std::vector<K>& flat) {
    flat.assign(win.cols(), K(0));
    for (size_t i = 0; i < Q.size(); ++i) {
        if (Q[i].is_zero()) continue;
        const Poly<K>& den = Q[i].den;
        // denominator must be a power of x
        long m = den.degree();
        for (long j = 0; j < m; ++j)
            if (!is_zero(den.coeff(j))) return false;
        for (long j = 0; j <= Q[i].num.degree(); ++j) {
            K c = Q[i].num.coeff(j);
            if (is_zero(c)) continue;
            long n = j - m;
            if (n < win.mu || n > win.delta) return false;
            flat[win.col(n, i)] = c;
        }
    }
    return true;
}

template<class K>
std::vector<RatFn<K>> from_window_flat(const QWindow<K>& win, const std::vector<K>& flat) {
    std::vector<RatFn<K>> Q(win.r, RatFn<K>(0));
    for (size_t i = 0; i < win.r; ++i) {
        Poly<K> num;
        long shift = win.mu < 0 ? -win.mu : 0;
        num.c.assign(static_cast<size_t>(win.delta + shift) + 1, K(0));
        for (long n = win.mu; n <= win.delta; ++n) {
            K c = flat[win.col(n, i)];
            num.c[static_cast<size_t>(n + shift)] = c;
        }
        num.trim();
        Q[i] = shift > 0 ? RatFn<K>(num, Poly<K>::x(shift)) : RatFn<K>(num);
    }
    return Q;
}

// echelonized basis of the summable space { Q : (1/a) Q V  in  Delta(U) },
// with the certificate combination attached to every row
template<class K>
struct SummableSpace {
    QWindow<K> win;
    long mu_u = 0, deltap = 0; // generator window for U = { c V : c in C[x]_{mu, deltap}^r }
    std::vector<std::vector<K>> rows;    // echelon rows over the window columns
    std::vector<size_t> pivot;           // pivot column per row
    std::vector<std::vector<K>> certs;   // generator coefficients per row
};

template<class K>
struct DecompPipeline {
    AnnCtxPtr<K> ctx;
    SuitableBasis<K> sb;   // frame W, suitable at the betas
    FramePtr<K> V;         // diag(x^tau) W
    std::vector<long> tau;
    InfReduction<K> R;     // Delta V = (1/a) B V data (a aligned below)
    Poly<K> a;             // x^lam1 (x+1)^lam2 e
    long lam1 = 0, lam2 = 0;
    long mu = 0, delta = -1, deltap = 0;
    SummableSpace<K> summ;
};

template<class K>
struct AdditiveDecomposition {
    ModElem<K> g;
    Poly<K> d;
    std::vector<Poly<K>> P; // over d, in W
    Poly<K> a;
    std::vector<RatFn<K>> Q; // Laurent vector over a, in V
    long mu = 0, delta = -1, deltap = 0;

    bool remainder_zero() const {
        for (auto& p : P) if (!p.is_zero()) return false;
        for (auto& q : Q) if (!q.is_zero()) return false;
        return true;
    }
};

namespace decompdetail {

// sigma(c) B_row + a Delta(c) e_i  for c = x^j e_i
template<class K>
std::vector<RatFn<K>> summable_generator(const DecompPipeline<K>& D, long j, size_t i) {
    const size_t r = D.V->dim();
    RatFn<K> xj = j >= 0 ? RatFn<K>(Poly<K>::x(j)) : RatFn<K>(Poly<K>(1), Poly<K>::x(-j));
    RatFn<K> sxj = shift_ratfn(xj, 1);
    std::vector<RatFn<K>> E(r, RatFn<K>(0));
    for (size_t k = 0; k < r; ++k)
        E[k] = sxj * RatFn<K>(D.R.B(i, k));
    E[i] += RatFn<K>(D.a) * (sxj - xj);
    return E;
}

// decompose a rational function with denominator dividing x^p (x+1)^q into
// x-Laurent part (coefficients by exponent) and (x+1)-pole part
template<class K>
bool pole_split(const RatFn<K>& f, std::map<long, K>& xpart, std::map<long, K>& x1part) {
    if (f.is_zero()) return true;
    Poly<K> den = f.den;
    long a = 0, b = 0;
    Poly<K> xp = Poly<K>::x();
    Poly<K> x1 = shift_poly(Poly<K>::x(), 1);
    while (divides(xp, den)) { den = den / xp; ++a; }
    while (divides(x1, den)) { den = den / x1; ++b; }
    if (den.degree() != 0) return false;
    // partial fractions against {x^a, (x+1)^b}
    Poly<K> num = f.num * Poly<K>(K(1) / den.coeff(0));
    Poly<K> D1 = poly_pow(xp, static_cast<unsigned long>(a));
    Poly<K> D2 = poly_pow(x1, static_cast<unsigned long>(b));
    Poly<K> A, B2, W;
    if (a == 0) { A = Poly<K>(); W = Poly<K>(); B2 = num; }
    else if (b == 0) { B2 = Poly<K>(); W = Poly<K>(); A = num; }
    else {
        Poly<K> s, t;
        poly_xgcd(D1, D2, s, t);
        A = poly_mod(num * t, D1);
        Poly<K> rest = (num - A * D2) / D1;
        B2 = rest;
    }
    // A / x^a: pure x-Laurent; B2 / (x+1)^b: split off its polynomial part
    auto [q2, r2] = b > 0 ? divrem(B2, D2) : std::pair<Poly<K>, Poly<K>>(B2, Poly<K>());
    for (long jj = 0; jj <= A.degree(); ++jj)
        if (!is_zero(A.coeff(jj))) xpart[jj - a] += A.coeff(jj);
    for (long jj = 0; jj <= q2.degree(); ++jj)
        if (!is_zero(q2.coeff(jj))) xpart[jj] += q2.coeff(jj);
    if (b > 0) {
        // r2 / (x+1)^b expanded in powers of (x+1)
        Poly<K> rr = taylor_shift(r2, K(-1)); // coefficients in (x+1)
        for (long jj = 0; jj <= rr.degree(); ++jj)
            if (!is_zero(rr.coeff(jj))) x1part[jj - b] += rr.coeff(jj);
    }
    return true;
}

} // namespace decompdetail

template<class K>
DecompPipeline<K> make_pipeline(AnnCtxPtr<K> ctx, long beta_extra = 0, ValConfig vcfg = {},
                                InfConfig icfg = {}) {
    DecompPipeline<K> D;
    D.ctx = ctx;
    D.sb = suitable_basis(ctx, beta_extra, vcfg);
    auto N = normalize_at_infinity(D.sb.frame, ctx, icfg);
    D.sb.frame = N.W2;
    D.V = N.V;
    D.tau = N.tau;
    return finish_pipeline(std::move(D));
}

// build a pipeline over explicitly given frames (W suitable, V = diag(x^tau) W)
template<class K>
DecompPipeline<K> make_pipeline_with_frames(AnnCtxPtr<K> ctx, SuitableBasis<K> sb,
                                            FramePtr<K> V, std::vector<long> tau) {
    DecompPipeline<K> D;
    D.ctx = ctx;
    D.sb = std::move(sb);
    D.V = std::move(V);
    D.tau = std::move(tau);
    return finish_pipeline(std::move(D));
}

template<class K>
DecompPipeline<K> finish_pipeline(DecompPipeline<K> D) {
    const size_t r = D.V->dim();
    D.R = make_inf_reduction(D.V);
    // align a to the form x^lam1 (x+1)^lam2 e
    Poly<K> rest = D.R.a;
    Poly<K> xp = Poly<K>::x(), x1 = shift_poly(Poly<K>::x(), 1);
    long ax = 0, ax1 = 0;
    while (divides(xp, rest)) { rest = rest / xp; ++ax; }
    while (divides(x1, rest)) { rest = rest / x1; ++ax1; }
    check(divides(rest, D.sb.frame->e), "difference denominator is not of the expected shape");
    Poly<K> missing = D.sb.frame->e / rest;
    // a := x^ax (x+1)^ax1 e; B rescaled accordingly
    D.lam1 = ax;
    D.lam2 = ax1;
    D.a = poly_pow(xp, static_cast<unsigned long>(ax)) * poly_pow(x1, static_cast<unsigned long>(ax1)) *
          D.sb.frame->e;
    if (missing.degree() > 0 || !(missing.lc() == K(1))) {
        Mat<Poly<K>> B2(r, r);
        for (size_t i = 0; i < r * r; ++i) B2.a[i] = D.R.B.a[i] * missing;
        D.R.B = std::move(B2);
        D.R.a = D.a;
        long degB = std::numeric_limits<long>::min();
        for (auto& b : D.R.B.a)
            if (!b.is_zero()) degB = std::max(degB, b.degree());
        if (degB != std::numeric_limits<long>::min())
            D.R.lambda = degB - D.a.degree();
    }

    D.mu = 0;
    for (long t : D.tau) D.mu = std::min(D.mu, -t);
    long degB = 0;
    bool bzero = true;
    for (auto& b : D.R.B.a)
        if (!b.is_zero()) { degB = std::max(degB, b.degree()); bzero = false; }
    D.delta = std::max(D.a.degree(), bzero ? 0 : degB) - 1;
    D.deltap = std::max<long>(0, (bzero ? 0 : degB) - D.a.degree());

    // summable space
    SummableSpace<K>& S = D.summ;
    S.win.mu = D.mu;
    S.win.delta = D.delta;
    S.win.r = r;
    S.mu_u = D.mu;
    S.deltap = D.deltap;
    const long gens_per = D.deltap - D.mu + 1;
    if (gens_per > 0) {
        struct Gen { std::vector<std::map<long, K>> xparts, x1parts; };
        std::vector<Gen> gens;
        std::vector<std::pair<long, size_t>> gen_ids;
        for (long j = D.mu; j <= D.deltap; ++j)
            for (size_t i = 0; i < r; ++i) {
                auto E = decompdetail::summable_generator(D, j, i);
                Gen g;
                g.xparts.resize(r);
                g.x1parts.resize(r);
                bool ok = true;
                for (size_t k = 0; k < r; ++k)
                    ok = ok && decompdetail::pole_split(E[k], g.xparts[k], g.x1parts[k]);
                check(ok, "summable generator outside the x/(x+1) pole lattice");
                gens.push_back(std::move(g));
                gen_ids.push_back({j, i});
            }
        // constraint columns: all (x+1)-poles and x-exponents outside [mu, delta]
        std::map<std::pair<long, long>, size_t> constr_cols; // (coord, exponent-key)
        auto key_of = [&](size_t k, long n, bool xpole) {
            return std::make_pair(static_cast<long>(k) * 2 + (xpole ? 0 : 1), n);
        };
        for (auto& g : gens)
            for (size_t k = 0; k < r; ++k) {
                for (auto& [n, c] : g.xparts[k])
                    if (n < D.mu || n > D.delta) constr_cols.emplace(key_of(k, n, true), 0);
                for (auto& [n, c] : g.x1parts[k]) constr_cols.emplace(key_of(k, n, false), 0);
            }
        size_t cc = 0;
        for (auto& [k, v] : constr_cols) v = cc++;
        Mat<K> A(constr_cols.size(), gens.size());
        for (size_t gi = 0; gi < gens.size(); ++gi)
            for (size_t k = 0; k < r; ++k) {
                for (auto& [n, c] : gens[gi].xparts[k])
                    if (n < D.mu || n > D.delta) A(constr_cols[key_of(k, n, true)], gi) = c;
                for (auto& [n, c] : gens[gi].x1parts[k])
                    A(constr_cols[key_of(k, n, false)], gi) = c;
            }
        auto lams = nullspace(A);
        // build Q rows and echelonize
        for (auto& lam : lams) {
            std::vector<K> flat(S.win.cols(), K(0));
            for (size_t gi = 0; gi < gens.size(); ++gi) {
                if (is_zero(lam[gi])) continue;
                for (size_t k = 0; k < r; ++k)
                    for (auto& [n, c] : gens[gi].xparts[k])
                        flat[S.win.col(n, k)] += lam[gi] * c;
            }
            // eliminate against existing rows
            std::vector<K> cert = lam;
            for (size_t ri = 0; ri < S.rows.size(); ++ri) {
                K c = flat[S.pivot[ri]];
                if (is_zero(c)) continue;
                for (size_t j2 = 0; j2 < flat.size(); ++j2) flat[j2] = flat[j2] - c * S.rows[ri][j2];
                for (size_t j2 = 0; j2 < cert.size(); ++j2) cert[j2] = cert[j2] - c * S.certs[ri][j2];
            }
            size_t piv = flat.size();
            for (size_t j2 = 0; j2 < flat.size(); ++j2)
                if (!is_zero(flat[j2])) { piv = j2; break; }
            if (piv == flat.size()) continue; // Q = 0 row: no reduction power
            K inv = K(1) / flat[piv];
            for (auto& v : flat) v = v * inv;
            for (auto& v : cert) v = v * inv;
            // back-substitute into earlier rows
            for (size_t ri = 0; ri < S.rows.size(); ++ri) {
                K c = S.rows[ri][piv];
                if (is_zero(c)) continue;
                for (size_t j2 = 0; j2 < flat.size(); ++j2)
                    S.rows[ri][j2] = S.rows[ri][j2] - c * flat[j2];
                for (size_t j2 = 0; j2 < cert.size(); ++j2)
                    S.certs[ri][j2] = S.certs[ri][j2] - c * cert[j2];
            }
            S.rows.push_back(std::move(flat));
            S.certs.push_back(std::move(cert));
            S.pivot.push_back(piv);
        }
    }
    return D;
}

// reduce Q against the summable space; returns the generator combination used
template<class K>
std::vector<K> refine_Q(const DecompPipeline<K>& D, std::vector<K>& flat) {
    const size_t ngen = D.summ.certs.empty() ? 0 : D.summ.certs[0].size();
    std::vector<K> used(ngen, K(0));
    for (size_t ri = 0; ri < D.summ.rows.size(); ++ri) {
        K c = flat[D.summ.pivot[ri]];
        if (is_zero(c)) continue;
        for (size_t j = 0; j < flat.size(); ++j) flat[j] = flat[j] - c * D.summ.rows[ri][j];
        for (size_t j = 0; j < ngen; ++j) used[j] = used[j] + c * D.summ.certs[ri][j];
    }
    return used;
}

template<class K>
AdditiveDecomposition<K> additive_decompose(const ModElem<K>& f, const DecompPipeline<K>& D,
                                            const std::vector<Poly<K>>& extra_reps = {}) {
    const size_t r = D.V->dim();
    // stage 1: generalized Abramov-Petkovsek reduction in W
    APRemainder<K> ap = ap_reduce_full(f, D.sb, extra_reps);

    // stage 2: rewrite the e-part over V and reduce at infinity
    std::vector<RatFn<K>> ecoords(r);
    RatFn<K> einv = RatFn<K>(1) / RatFn<K>(D.sb.frame->e);
    for (size_t i = 0; i < r; ++i) ecoords[i] = RatFn<K>(ap.R[i]) * einv;
    ModElem<K> epart = change_frame(ModElem<K>(D.sb.frame, ecoords), D.V);
    ModElem<K> g2 = zero_elem(D.V);
    std::vector<RatFn<K>> h;
    reduce_at_infinity(D.R, epart.coord, g2, h);

    // stage 3: refine against the summable space
    std::vector<RatFn<K>> Q(r);
    for (size_t i = 0; i < r; ++i) Q[i] = RatFn<K>(D.a) * h[i];
    std::vector<K> flat;
    check(to_window_flat(D.summ.win, Q, flat),
          "infinity remainder escaped the Laurent window");
    auto used = refine_Q(D, flat);
    std::vector<RatFn<K>> Q2 = from_window_flat(D.summ.win, flat);

    // certificate from the used summable generators
    ModElem<K> g3 = zero_elem(D.V);
    if (!used.empty()) {
        size_t gi = 0;
        for (long j = D.mu; j <= D.deltap; ++j)
            for (size_t i = 0; i < r; ++i, ++gi) {
                if (is_zero(used[gi])) continue;
                RatFn<K> xj = j >= 0 ? RatFn<K>(Poly<K>::x(j)) : RatFn<K>(Poly<K>(1), Poly<K>::x(-j));
                g3.coord[i] += RatFn<K>(Poly<K>(used[gi])) * xj;
            }
    }

    AdditiveDecomposition<K> out;
    out.g = change_frame(ap.g, D.V) + g2 + g3;
    out.d = ap.d;
    out.P = ap.P;
    out.a = D.a;
    out.Q = std::move(Q2);
    out.mu = D.mu;
    out.delta = D.delta;
    out.deltap = D.deltap;
    return out;
}

// the remainder (1/d) P W + (1/a) Q V as a module element
template<class K>
ModElem<K> remainder_value(const AdditiveDecomposition<K>& dec, const DecompPipeline<K>& D) {
    const size_t r = D.V->dim();
    std::vector<RatFn<K>> wco(r, RatFn<K>(0));
    RatFn<K> dinv = RatFn<K>(1) / RatFn<K>(dec.d);
    for (size_t i = 0; i < r; ++i) wco[i] = RatFn<K>(dec.P[i]) * dinv;
    ModElem<K> wpart(D.sb.frame, wco);
    std::vector<RatFn<K>> vco(r, RatFn<K>(0));
    RatFn<K> ainv = RatFn<K>(1) / RatFn<K>(dec.a);
    for (size_t i = 0; i < r; ++i) vco[i] = dec.Q[i] * ainv;
    ModElem<K> vpart(D.V, vco);
    return change_frame(wpart, D.V) + vpart;
}

template<class K>
struct SummabilityVerdict {
    bool summable = false;
    ModElem<K> certificate;            // when summable: Delta(certificate) = f
    AdditiveDecomposition<K> witness;  // P, Q as the non-summability witness
};

template<class K>
SummabilityVerdict<K> is_summable(const ModElem<K>& f, const DecompPipeline<K>& D) {
    SummabilityVerdict<K> v;
    v.witness = additive_decompose(f, D);
    v.summable = v.witness.remainder_zero();
    if (v.summable) {
        v.certificate = v.witness.g;
        check(equal_in_A(delta(v.certificate), f), "summability certificate failed to verify");
    }
    return v;
}

} // namespace oretel

#endif
