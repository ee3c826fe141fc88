#ifndef ORETEL_SHIFTOPS_HPP
#define ORETEL_SHIFTOPS_HPP

#include "factor.hpp"
#include <optional>

namespace oretel {

// total order on polynomials used only for deterministic tie-breaks
inline bool coeff_less(const Rat& a, const Rat& b) { return a < b; }
inline bool coeff_less(const QT& a, const QT& b) {
    if (a.num.degree() != b.num.degree()) return a.num.degree() < b.num.degree();
    if (a.den.degree() != b.den.degree()) return a.den.degree() < b.den.degree();
    for (long i = a.num.degree(); i >= 0; --i)
        if (a.num.coeff(i) != b.num.coeff(i)) return a.num.coeff(i) < b.num.coeff(i);
    for (long i = a.den.degree(); i >= 0; --i)
        if (a.den.coeff(i) != b.den.coeff(i)) return a.den.coeff(i) < b.den.coeff(i);
    return false;
}

template<class K>
bool poly_lex_less(const Poly<K>& a, const Poly<K>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
        K ca = a.coeff(i), cb = b.coeff(i);
        if (!(ca == cb)) return coeff_less(ca, cb);
    }
    return false;
}

// Is rational constant an integer?  (t-free for K = QQ(t).)
inline std::optional<Int> as_integer(const Rat& a) {
    if (a.get_den() == 1) return a.get_num();
    return std::nullopt;
}
inline std::optional<Int> as_integer(const QT& a) {
    if (!qt_is_rat(a)) return std::nullopt;
    return as_integer(a.num.coeff(0));
}

// If q == sigma^k(p) for monic p, q (i.e. q(x) = p(x+k)), return k.
template<class K>
std::optional<long> shift_equivalent_offset(const Poly<K>& p, const Poly<K>& q) {
    const long d = p.degree();
    if (d != q.degree() || d < 1) return std::nullopt;
    // x^{d-1} coefficient of p(x+k) is p_{d-1} + d*k
    K diff = (q.coeff(d - 1) / q.coeff(d) - p.coeff(d - 1) / p.coeff(d)) / K(d);
    auto k = as_integer(diff);
    if (!k) return std::nullopt;
    long kk = to_long(*k);
    if (shift_poly(p.monic(), kk) == q.monic()) return kk;
    return std::nullopt;
}

// dispersion(p, q) = max { k >= 0 : gcd(p(x), q(x+k)) nontrivial }, or nullopt
// for the empty set.  Computed from the integer roots of Res_x(p(x), q(x+k)).
template<class K>
std::optional<long> dispersion(const Poly<K>& p, const Poly<K>& q) {
    check(!p.is_zero() && !q.is_zero(), "zero polynomial has no dispersion");
    if (p.degree() < 1 || q.degree() < 1) return std::nullopt;
    // coefficients of q(x+k) as polynomials in k
    const long dq = q.degree();
    std::vector<Poly<K>> qs(static_cast<size_t>(dq) + 1); // index: power of x
    {
        // (x+k)^j expanded iteratively
        std::vector<std::vector<K>> binom(static_cast<size_t>(dq) + 1);
        binom[0] = {K(1)};
        for (long j = 1; j <= dq; ++j) {
            binom[static_cast<size_t>(j)].assign(static_cast<size_t>(j) + 1, K(0));
            for (long i = 0; i <= j; ++i) {
                K v(0);
                if (i > 0) v = v + binom[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
                if (i < j) v = v + binom[static_cast<size_t>(j - 1)][static_cast<size_t>(i)];
                binom[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        }
        for (long j = 0; j <= dq; ++j) {
            if (oretel::is_zero(q.coeff(j))) continue;
            for (long i = 0; i <= j; ++i) {
                // contribution q_j * C(j,i) x^i k^{j-i}
                Poly<K>& dst = qs[static_cast<size_t>(i)];
                if (dst.degree() < j - i) dst.c.resize(static_cast<size_t>(j - i) + 1, K(0));
                dst.c[static_cast<size_t>(j - i)] = dst.c[static_cast<size_t>(j - i)] + q.coeff(j) * binom[static_cast<size_t>(j)][static_cast<size_t>(i)];
            }
        }
        for (auto& d : qs) d.trim();
    }
    std::vector<Poly<K>> pc;
    for (auto& c : p.c) pc.push_back(Poly<K>(c));
    while (!qs.empty() && qs.back().is_zero()) qs.pop_back();
    Poly<K> res = sylvester_resultant<Poly<K>>(pc, qs);
    if (res.is_zero()) {
        // degenerate (can happen only for p, q sharing a factor for all k; not
        // possible for nonzero polynomials)
        throw oretel_error("degenerate dispersion resultant");
    }
    std::optional<long> best;
    for (auto& r : integer_roots_k<K>(res)) {
        if (r < 0) continue;
        long k = to_long(r);
        if (!best || k > *best) best = k;
    }
    return best;
}

template<class K>
std::optional<long> dispersion_self(const Poly<K>& p) { return dispersion(p, p); }

// gcd(p, sigma^i(p)) = 1 for all i != 0
template<class K>
bool is_shift_free(const Poly<K>& p) {
    check(!p.is_zero(), "shift-freeness of zero polynomial");
    if (p.degree() < 1) return true;
    Poly<K> sf = squarefree_part(p);
    if (sf.degree() < 1) return true;
    auto d = dispersion(sf, sf);
    return !d || *d == 0;
}

template<class K>
struct OrbitClass {
    Poly<K> rep;               // monic irreducible representative
    std::vector<long> shifts;  // sorted; sigma^k(rep) divides the input
    std::vector<long> mult;    // multiplicity per shift
};

// Factor u and group the irreducible factors into shift-equivalence classes.
// Representatives default to the lexicographically smallest appearing factor;
// forced_reps (when shift-equivalent to a class) override the representative.
template<class K>
std::vector<OrbitClass<K>> shift_classes(const Poly<K>& u,
                                         const std::vector<Poly<K>>& forced_reps = {}) {
    check(!u.is_zero(), "shift classes of zero polynomial");
    std::vector<OrbitClass<K>> classes;
    auto fac = factor_poly(u);
    for (auto& [f, m] : fac.factors) {
        bool placed = false;
        for (auto& cls : classes) {
            auto k = shift_equivalent_offset(cls.rep, f);
            if (k) {
                cls.shifts.push_back(*k);
                cls.mult.push_back(m);
                placed = true;
                break;
            }
        }
        if (!placed) {
            OrbitClass<K> cls;
            cls.rep = f.monic();
            cls.shifts = {0};
            cls.mult = {m};
            classes.push_back(std::move(cls));
        }
    }
    for (auto& cls : classes) {
        // pick representative: forced if available, else lex-smallest member
        std::optional<long> rebase;
        for (auto& forced : forced_reps) {
            auto k = shift_equivalent_offset(cls.rep, forced);
            if (k) { rebase = *k; break; }
        }
        if (!rebase) {
            long best = cls.shifts[0];
            Poly<K> bestp = shift_poly(cls.rep, cls.shifts[0]);
            for (size_t i = 1; i < cls.shifts.size(); ++i) {
                Poly<K> cand = shift_poly(cls.rep, cls.shifts[i]);
                if (poly_lex_less(cand, bestp)) { bestp = cand; best = cls.shifts[i]; }
            }
            rebase = best;
        }
        if (*rebase != 0) {
            cls.rep = shift_poly(cls.rep, *rebase);
            for (auto& s : cls.shifts) s -= *rebase;
        }
        // sort by shift
        std::vector<size_t> idx(cls.shifts.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return cls.shifts[a] < cls.shifts[b]; });
        std::vector<long> s2, m2;
        for (size_t i : idx) { s2.push_back(cls.shifts[i]); m2.push_back(cls.mult[i]); }
        cls.shifts = std::move(s2);
        cls.mult = std::move(m2);
    }
    // deterministic class order
    std::sort(classes.begin(), classes.end(), [](const OrbitClass<K>& a, const OrbitClass<K>& b) {
        return poly_lex_less(a.rep, b.rep);
    });
    return classes;
}

template<class K>
Poly<K> orbit_reconstruct(const std::vector<OrbitClass<K>>& classes) {
    Poly<K> u(1);
    for (auto& cls : classes)
        for (size_t i = 0; i < cls.shifts.size(); ++i)
            u = u * poly_pow(shift_poly(cls.rep, cls.shifts[i]), static_cast<unsigned long>(cls.mult[i]));
    return u;
}

template<class K>
struct PartialFractions {
    Poly<K> poly_part;
    std::vector<Poly<K>> numerators; // aligned with the factor-power list
};

// f = poly + sum a_i / D_i with D_i = factors[i].first ^ factors[i].second,
// deg a_i < deg D_i.  The factor powers must be pairwise coprime and multiply
// to den(f) up to a constant.
template<class K>
PartialFractions<K> partial_fractions(const RatFn<K>& f,
                                      const std::vector<std::pair<Poly<K>, long>>& factors) {
    PartialFractions<K> out;
    std::vector<Poly<K>> D;
    Poly<K> prod(1);
    for (auto& [p, m] : factors) {
        check(m >= 1, "nonpositive multiplicity in factor list");
        D.push_back(poly_pow(p.monic(), static_cast<unsigned long>(m)));
        prod = prod * D.back();
    }
    check(divides(f.den, prod), "factor list inconsistent with denominator");
    // realign to the full product (the reduced denominator may be smaller)
    Poly<K> num = f.num * (prod / f.den);
    auto [q, r] = divrem(num, prod);
    out.poly_part = q;
    // peel one factor power at a time
    Poly<K> n = r;
    for (size_t i = 0; i < D.size(); ++i) {
        Poly<K> rest(1);
        for (size_t j = i + 1; j < D.size(); ++j) rest = rest * D[j];
        if (rest.is_one()) {
            check(n.is_zero() || n.degree() < D[i].degree(), "partial fraction remainder too large");
            out.numerators.push_back(n);
            n = Poly<K>();
            break;
        }
        Poly<K> s, t;
        Poly<K> g = poly_xgcd(D[i], rest, s, t);
        check(g.is_one(), "factor powers not pairwise coprime");
        Poly<K> a = poly_mod(n * t, D[i]);
        out.numerators.push_back(a);
        n = (n - a * rest) / D[i];
    }
    while (out.numerators.size() < D.size()) out.numerators.push_back(Poly<K>());
    return out;
}

} // namespace oretel

#endif
