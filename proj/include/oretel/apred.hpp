#ifndef ORETEL_APRED_HPP
#define ORETEL_APRED_HPP

#include "finite_bases.hpp"

namespace oretel {

// two-block partial fraction split of a rational vector: v = w + v1/D1 + v2/D2
// with gcd(D1, D2) = 1; deg v1 < deg D1 (the D2-part absorbs the rest)
template<class K>
void split2(const std::vector<RatFn<K>>& v, const Poly<K>& D1, const Poly<K>& D2,
            std::vector<Poly<K>>& w, std::vector<Poly<K>>& v1, std::vector<Poly<K>>& v2) {
    const size_t r = v.size();
    w.assign(r, Poly<K>());
    v1.assign(r, Poly<K>());
    v2.assign(r, Poly<K>());
    Poly<K> s, t;
    Poly<K> g = poly_xgcd(D1, D2, s, t);
    check(g.is_one(), "split blocks not coprime");
    Poly<K> D = D1 * D2;
    for (size_t i = 0; i < r; ++i) {
        if (v[i].is_zero()) continue;
        check(divides(v[i].den, D), "denominator outside the split blocks");
        Poly<K> n = v[i].num * (D / v[i].den);
        // n/(D1 D2) = a/D1 + rest; a = n t mod D1  (t D2 = 1 mod D1)
        Poly<K> a = poly_mod(n * t, D1);
        v1[i] = a;
        Poly<K> rest = (n - a * D2) / D1; // exact
        auto [q, rem] = divrem(rest, D2);
        w[i] = q;
        v2[i] = rem;
    }
}

// one generalized Abramov-Petkovsek step (matrix reduction formula):
//   a W / sigma^l(q)  =  Delta g + c W / (q e etil)
// q is either coprime to every shift of the beta minimal polynomials (case i)
// or a power of one of them (case ii).
template<class K>
void ap_step(std::vector<Poly<K>> a, const Poly<K>& q, long l, const FramePtr<K>& W,
             ModElem<K>& g_out, std::vector<Poly<K>>& c_out) {
    const size_t r = W->dim();
    const Poly<K>& e = W->e;
    const Poly<K>& etil = W->ftil;
    ModElem<K> g = zero_elem(W);
    std::vector<Poly<K>> c(r, Poly<K>());

    auto add_scaled_row = [&](const std::vector<Poly<K>>& vec, const Poly<K>& mult) {
        for (size_t i = 0; i < r; ++i) c[i] += vec[i] * mult;
    };

    if (l >= 1) {
        while (l >= 1) {
            // a W / sigma^l(q) = Delta(h) + h with
            // h = sigma^{-1}(a) sigma^{-1}(N) W / (sigma^{l-1}(q) sigma^{-1}(etil))
            std::vector<Poly<K>> sa(r);
            for (size_t i = 0; i < r; ++i) sa[i] = shift_poly(a[i], -1);
            std::vector<Poly<K>> num(r, Poly<K>());
            for (size_t i = 0; i < r; ++i) {
                if (sa[i].is_zero()) continue;
                for (size_t j = 0; j < r; ++j)
                    num[j] += sa[i] * shift_poly(W->N(i, j), -1);
            }
            Poly<K> d1 = shift_poly(q, l - 1), d2 = shift_poly(etil, -1);
            RatFn<K> dinv = RatFn<K>(1) / RatFn<K>(d1 * d2);
            std::vector<RatFn<K>> h(r);
            for (size_t i = 0; i < r; ++i) h[i] = RatFn<K>(num[i]) * dinv;
            for (size_t i = 0; i < r; ++i) g.coord[i] += h[i];
            std::vector<Poly<K>> w, v1, v2;
            split2(h, d1, d2, w, v1, v2);
            // v2 W / sigma^{-1}(etil) = Delta(-v2 W / sigma^{-1}(etil)) + sigma(v2) M W/(etil e)
            for (size_t i = 0; i < r; ++i)
                g.coord[i] -= RatFn<K>(v2[i]) / RatFn<K>(d2);
            std::vector<Poly<K>> sv2(r);
            for (size_t i = 0; i < r; ++i) sv2[i] = shift_poly(v2[i], 1);
            std::vector<Poly<K>> mv(r, Poly<K>());
            for (size_t i = 0; i < r; ++i) {
                if (sv2[i].is_zero()) continue;
                for (size_t j = 0; j < r; ++j) mv[j] += sv2[i] * W->M(i, j);
            }
            add_scaled_row(mv, q);           // sigma(v2) M W/(etil e) = q sigma(v2) M W/(q e etil)
            add_scaled_row(w, q * e * etil); // polynomial part
            a = v1;
            --l;
        }
        add_scaled_row(a, e * etil); // l = 0 tail
    } else if (l <= -1) {
        while (true) {
            // a W/sigma^l(q) = Delta(-a W/sigma^l(q)) + sigma(a) M W/(sigma^{l+1}(q) e)
            RatFn<K> dinv = RatFn<K>(1) / RatFn<K>(shift_poly(q, l));
            for (size_t i = 0; i < r; ++i) g.coord[i] -= RatFn<K>(a[i]) * dinv;
            std::vector<Poly<K>> sa(r);
            for (size_t i = 0; i < r; ++i) sa[i] = shift_poly(a[i], 1);
            std::vector<Poly<K>> mv(r, Poly<K>());
            for (size_t i = 0; i < r; ++i) {
                if (sa[i].is_zero()) continue;
                for (size_t j = 0; j < r; ++j) mv[j] += sa[i] * W->M(i, j);
            }
            if (l == -1) {
                add_scaled_row(mv, etil); // sigma(a) M W/(q e) = etil sigma(a) M W/(q e etil)
                break;
            }
            Poly<K> d1 = shift_poly(q, l + 1);
            std::vector<RatFn<K>> h(r);
            RatFn<K> dinv2 = RatFn<K>(1) / RatFn<K>(d1 * e);
            for (size_t i = 0; i < r; ++i) h[i] = RatFn<K>(mv[i]) * dinv2;
            std::vector<Poly<K>> w, v1, v2;
            split2(h, d1, e, w, v1, v2);
            add_scaled_row(v2, q * etil);    // v2/e part
            add_scaled_row(w, q * e * etil); // polynomial part
            a = v1;
            ++l;
        }
    } else {
        add_scaled_row(a, e * etil);
    }
    g_out = g;
    c_out = c;
}

// remainder of the generalized AP reduction:  f = Delta g + (1/d) P W + (1/e) R W
template<class K>
struct APRemainder {
    ModElem<K> g;
    Poly<K> d;
    std::vector<Poly<K>> P;
    std::vector<Poly<K>> R;
};

// f = Delta g + c W / utilde with utilde * prod(x - beta_i) shift-free
template<class K>
void ap_reduce(const ModElem<K>& f_in, const SuitableBasis<K>& sb,
               ModElem<K>& g_out, std::vector<Poly<K>>& c_out, Poly<K>& utilde_out,
               const std::vector<Poly<K>>& extra_reps = {}) {
    const FramePtr<K>& W = sb.frame;
    const size_t r = W->dim();
    ModElem<K> f = change_frame(f_in, W);
    ModElem<K> g = zero_elem(W);

    // common denominator
    Poly<K> u(1);
    for (auto& cc : f.coord) u = poly_lcm(u, cc.den);
    std::vector<Poly<K>> a(r);
    for (size_t i = 0; i < r; ++i) a[i] = f.coord[i].num * (u / f.coord[i].den);

    const Poly<K>& e = W->e;
    const Poly<K>& etil = W->ftil;

    std::vector<Poly<K>> forced = sb.beta_minpolys();
    for (auto& p : extra_reps) forced.push_back(p);

    std::vector<Poly<K>> c(r, Poly<K>());
    Poly<K> qprod(1); // prod q_i^{n_i}

    if (u.degree() >= 1) {
        auto classes = shift_classes(u, forced);
        // factor-power list for the vector partial fraction decomposition
        std::vector<std::pair<Poly<K>, long>> faclist;
        std::vector<std::pair<size_t, size_t>> who; // (class, shift position)
        for (size_t ci = 0; ci < classes.size(); ++ci)
            for (size_t si = 0; si < classes[ci].shifts.size(); ++si) {
                faclist.push_back({shift_poly(classes[ci].rep, classes[ci].shifts[si]),
                                   classes[ci].mult[si]});
                who.push_back({ci, si});
            }
        std::vector<Poly<K>> f0(r, Poly<K>());
        std::vector<std::vector<Poly<K>>> nums(faclist.size(), std::vector<Poly<K>>(r));
        for (size_t i = 0; i < r; ++i) {
            RatFn<K> fi(a[i], u);
            auto pf = partial_fractions(fi, faclist);
            f0[i] = pf.poly_part;
            for (size_t kdx = 0; kdx < faclist.size(); ++kdx)
                nums[kdx][i] = pf.numerators[kdx];
        }
        // n_i = max multiplicity per class
        std::vector<long> nmax(classes.size(), 0);
        for (size_t kdx = 0; kdx < faclist.size(); ++kdx)
            nmax[who[kdx].first] = std::max(nmax[who[kdx].first], faclist[kdx].second);
        for (size_t ci = 0; ci < classes.size(); ++ci)
            qprod = qprod * poly_pow(classes[ci].rep, static_cast<unsigned long>(nmax[ci]));

        // utilde = e etil prod q_i^{n_i}
        Poly<K> utilde = e * etil * qprod;
        // polynomial part contributes f0 * utilde
        for (size_t i = 0; i < r; ++i) c[i] += f0[i] * utilde;
        for (size_t kdx = 0; kdx < faclist.size(); ++kdx) {
            auto [ci, si] = who[kdx];
            const Poly<K> qfull = poly_pow(classes[ci].rep,
                                           static_cast<unsigned long>(faclist[kdx].second));
            ModElem<K> gstep = zero_elem(W);
            std::vector<Poly<K>> cstep;
            ap_step<K>(nums[kdx], qfull, classes[ci].shifts[si], W, gstep, cstep);
            for (size_t i = 0; i < r; ++i) g.coord[i] += gstep.coord[i];
            // cstep over qfull * e * etil; rescale to utilde
            Poly<K> scale = utilde / (qfull * e * etil);
            for (size_t i = 0; i < r; ++i) c[i] += cstep[i] * scale;
        }
        utilde_out = utilde;
    } else {
        Poly<K> utilde = e * etil;
        for (size_t i = 0; i < r; ++i) c[i] = a[i] * (utilde / u);
        utilde_out = utilde;
    }

    // strip common content
    Poly<K> content = utilde_out;
    for (auto& cc : c) content = poly_gcd(content, cc);
    if (content.degree() > 0) {
        utilde_out = utilde_out / content;
        for (auto& cc : c) cc = cc / content;
    }
    const K lead = utilde_out.lc();
    if (!(lead == K(1))) {
        utilde_out = utilde_out.monic();
        const K inv = K(1) / lead;
        for (auto& cc : c) cc = cc * inv;
    }
    c_out = std::move(c);
    g_out = g;
}

// split the reduced remainder h = c W/utilde into (1/d) P W + (1/e) R W with
// deg P < deg d, d prod(x - beta_i) shift-free
template<class K>
APRemainder<K> split_PR(const ModElem<K>& g, const std::vector<Poly<K>>& c,
                        const Poly<K>& utilde, const SuitableBasis<K>& sb) {
    const FramePtr<K>& W = sb.frame;
    const size_t r = W->dim();
    const Poly<K>& e = W->e;
    APRemainder<K> out;
    out.g = g;

    // multiplicities of the beta minimal polynomials in utilde and in e
    auto betas = sb.beta_minpolys();
    Poly<K> u0 = utilde.monic();
    std::vector<long> nmult(betas.size(), 0), kmult(betas.size(), 0);
    for (size_t j = 0; j < betas.size(); ++j) {
        while (divides(betas[j], u0)) { u0 = u0 / betas[j]; ++nmult[j]; }
        Poly<K> etmp = e;
        while (divides(betas[j], etmp)) { etmp = etmp / betas[j]; ++kmult[j]; }
    }
    // u0 is now the beta-free part
    std::vector<std::pair<Poly<K>, long>> blocks;
    std::vector<long> block_beta; // -1 for the beta-free block
    if (u0.degree() > 0) {
        blocks.push_back({u0, 1});
        block_beta.push_back(-1);
    }
    for (size_t j = 0; j < betas.size(); ++j)
        if (nmult[j] > 0) {
            blocks.push_back({betas[j], nmult[j]});
            block_beta.push_back(static_cast<long>(j));
        }

    std::vector<Poly<K>> h0(r, Poly<K>());
    std::vector<std::vector<Poly<K>>> nums(blocks.size(), std::vector<Poly<K>>(r));
    for (size_t i = 0; i < r; ++i) {
        RatFn<K> fi(c[i], utilde);
        if (fi.is_zero()) { continue; }
        // the reduced denominator divides utilde; realign to the block product
        Poly<K> full(1);
        for (auto& [b, m] : blocks) full = full * poly_pow(b, static_cast<unsigned long>(m));
        RatFn<K> fr(fi.num * (full / fi.den), full);
        auto pf = partial_fractions(fr, blocks);
        h0[i] = pf.poly_part;
        for (size_t b = 0; b < blocks.size(); ++b) nums[b][i] = pf.numerators[b];
    }

    Poly<K> d(1);
    std::vector<std::vector<Poly<K>>> dparts; // numerator vectors for d-blocks
    std::vector<Poly<K>> dmods;               // corresponding block moduli
    std::vector<Poly<K>> R(r, Poly<K>());
    for (size_t i = 0; i < r; ++i) R[i] = e * h0[i];

    for (size_t b = 0; b < blocks.size(); ++b) {
        bool nonzero = false;
        for (size_t i = 0; i < r; ++i)
            if (!nums[b][i].is_zero()) nonzero = true;
        if (!nonzero) continue;
        if (block_beta[b] < 0) {
            // beta-free part goes entirely to the d-side
            Poly<K> mod = blocks[b].first;
            d = d * mod;
            dparts.push_back(nums[b]);
            dmods.push_back(mod);
            continue;
        }
        const size_t j = static_cast<size_t>(block_beta[b]);
        const Poly<K>& pj = betas[j];
        const long n = nmult[j], k = kmult[j];
        if (n > k) {
            Poly<K> pnk = poly_pow(pj, static_cast<unsigned long>(n - k));
            std::vector<Poly<K>> bj(r), aj(r);
            bool bj_nonzero = false;
            for (size_t i = 0; i < r; ++i) {
                auto [q, rem] = divrem(nums[b][i], pnk);
                aj[i] = q;
                bj[i] = rem;
                if (!rem.is_zero()) bj_nonzero = true;
            }
            if (bj_nonzero) {
                Poly<K> mod = poly_pow(pj, static_cast<unsigned long>(n));
                d = d * mod;
                dparts.push_back(bj);
                dmods.push_back(mod);
            }
            Poly<K> escale = e / poly_pow(pj, static_cast<unsigned long>(k));
            for (size_t i = 0; i < r; ++i) R[i] += escale * aj[i];
        } else {
            Poly<K> escale = (e / poly_pow(pj, static_cast<unsigned long>(k)))
                * poly_pow(pj, static_cast<unsigned long>(k - n));
            for (size_t i = 0; i < r; ++i) R[i] += escale * nums[b][i];
        }
    }

    std::vector<Poly<K>> P(r, Poly<K>());
    for (size_t b = 0; b < dparts.size(); ++b) {
        Poly<K> scale = d / dmods[b];
        for (size_t i = 0; i < r; ++i) P[i] += dparts[b][i] * scale;
    }
    out.d = d;
    out.P = std::move(P);
    out.R = std::move(R);
    return out;
}

template<class K>
APRemainder<K> ap_reduce_full(const ModElem<K>& f, const SuitableBasis<K>& sb,
                              const std::vector<Poly<K>>& extra_reps = {}) {
    ModElem<K> g = zero_elem(sb.frame);
    std::vector<Poly<K>> c;
    Poly<K> utilde;
    ap_reduce(f, sb, g, c, utilde, extra_reps);
    return split_PR(g, c, utilde, sb);
}

// reconstruction: Delta g + (1/d) P W + (1/e) R W as a module element
template<class K>
ModElem<K> ap_remainder_value(const APRemainder<K>& ap, const SuitableBasis<K>& sb) {
    const FramePtr<K>& W = sb.frame;
    const size_t r = W->dim();
    std::vector<RatFn<K>> co(r, RatFn<K>(0));
    RatFn<K> dinv = RatFn<K>(1) / RatFn<K>(ap.d);
    RatFn<K> einv = RatFn<K>(1) / RatFn<K>(W->e);
    for (size_t i = 0; i < r; ++i)
        co[i] = RatFn<K>(ap.P[i]) * dinv + RatFn<K>(ap.R[i]) * einv;
    return ModElem<K>(W, co);
}

} // namespace oretel

#endif
