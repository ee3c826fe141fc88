#ifndef ORETEL_EXT_HPP
#define ORETEL_EXT_HPP

#include "poly.hpp"
#include <memory>

namespace oretel {

// One-level algebraic extension K[y]/<mod>, mod monic irreducible.
template<class K>
struct ExtCtx {
    Poly<K> mod;
    explicit ExtCtx(Poly<K> m) : mod(std::move(m)) {
        check(mod.degree() >= 1, "extension modulus must be nonconstant");
        check(mod.lc() == K(1), "extension modulus must be monic");
    }
    long degree() const { return mod.degree(); }
};

template<class K> using ExtCtxPtr = std::shared_ptr<const ExtCtx<K>>;

// Element of K or of a shared extension K[y]/<mod>.  A null context marks a
// base-field constant; arithmetic lifts constants into the other operand's
// extension on demand.
template<class K>
class ExtElem {
public:
    ExtCtxPtr<K> ctx; // may be null
    Poly<K> rep;      // deg < deg mod when ctx set, constant otherwise

    ExtElem() = default;
    ExtElem(long v) : rep(v) {}
    explicit ExtElem(const K& v) : rep(Poly<K>(v)) {}
    ExtElem(ExtCtxPtr<K> c, Poly<K> r) : ctx(std::move(c)), rep(std::move(r)) {
        if (ctx) rep = poly_mod(rep, ctx->mod);
    }

    static ExtElem generator(ExtCtxPtr<K> c) { return ExtElem(c, Poly<K>::x()); }

    bool is_zero() const { return rep.is_zero(); }
    bool is_constant() const { return rep.is_constant(); }
    K constant_value() const {
        check(rep.is_constant(), "extension element is not a base-field constant");
        return rep.coeff(0);
    }

    friend ExtCtxPtr<K> join(const ExtElem& a, const ExtElem& b) {
        if (a.ctx && b.ctx) {
            check(a.ctx == b.ctx || a.ctx->mod == b.ctx->mod, "mixed extension contexts");
            return a.ctx;
        }
        return a.ctx ? a.ctx : b.ctx;
    }

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b) {
        return ExtElem(join(a, b), a.rep + b.rep);
    }
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b) {
        return ExtElem(join(a, b), a.rep - b.rep);
    }
    ExtElem operator-() const { ExtElem r = *this; r.rep = -r.rep; return r; }
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b) {
        return ExtElem(join(a, b), a.rep * b.rep);
    }
    friend ExtElem operator/(const ExtElem& a, const ExtElem& b) {
        check(!b.is_zero(), "division by zero extension element");
        ExtCtxPtr<K> c = join(a, b);
        if (!c || b.rep.is_constant())
            return ExtElem(c, a.rep * (K(1) / b.rep.coeff(0)));
        Poly<K> s, t;
        Poly<K> g = poly_xgcd(b.rep, c->mod, s, t);
        check(g.degree() == 0, "modulus not irreducible: zero divisor found");
        // g is monic constant 1; s = b^{-1} mod m
        return ExtElem(c, a.rep * s);
    }
    friend bool operator==(const ExtElem& a, const ExtElem& b) { return a.rep == b.rep; }
    friend bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a.rep == b.rep); }

    ExtElem& operator+=(const ExtElem& o) { *this = *this + o; return *this; }
    ExtElem& operator-=(const ExtElem& o) { *this = *this - o; return *this; }
    ExtElem& operator*=(const ExtElem& o) { *this = *this * o; return *this; }
};

template<class K> bool is_zero(const ExtElem<K>& a) { return a.is_zero(); }

// evaluate polynomial p over K at an extension element
template<class K>
ExtElem<K> eval_at_ext(const Poly<K>& p, const ExtElem<K>& v) {
    ExtElem<K> r(0);
    for (size_t i = p.c.size(); i-- > 0;) r = r * v + ExtElem<K>(p.c[i]);
    return r;
}

} // namespace oretel

#endif
