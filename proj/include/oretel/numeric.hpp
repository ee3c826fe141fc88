#ifndef ORETEL_NUMERIC_HPP
#define ORETEL_NUMERIC_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>
#include <cstdint>

namespace oretel {

using Int = mpz_class;
using Rat = mpq_class;

struct oretel_error : std::runtime_error {
    explicit oretel_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw oretel_error(msg);
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_pow(const Int& a, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

// floor(a/b) for exact integers
inline Int int_fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline long to_long(const Int& a) {
    check(a.fits_slong_p(), "integer out of machine range: " + a.get_str());
    return a.get_si();
}

inline Rat rat_of(long num, long den = 1) { Rat r(num, den); r.canonicalize(); return r; }

inline Int rat_floor(const Rat& a) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return q;
}

// isqrt with exactness flag
inline Int int_sqrt(const Int& a, bool* exact = nullptr) {
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t());
    if (exact) *exact = (rem == 0);
    return r;
}

} // namespace oretel

#endif
