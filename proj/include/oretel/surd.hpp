#ifndef ORETEL_SURD_HPP
#define ORETEL_SURD_HPP

#include "numeric.hpp"
#include "poly.hpp"

namespace oretel {

// exact real number of the form a + b*sqrt(d), d squarefree, d <= 1 => b = 0
struct QuadSurd {
    Rat a{0}, b{0};
    Int d{0};

    QuadSurd() = default;
    QuadSurd(long v) : a(v) {}
    explicit QuadSurd(const Rat& r) : a(r) {}
    QuadSurd(Rat aa, Rat bb, Int dd) : a(std::move(aa)), b(std::move(bb)), d(std::move(dd)) {
        normalize();
    }

    void normalize() {
        if (is_zero(b) || d <= 1) {
            if (d == 1) a += b;
            b = 0;
            d = 0;
            return;
        }
        // extract square part of d
        Int sq(1), rest(1), dd = d;
        for (Int f(2); f * f <= dd; ++f) {
            while (dd % (f * f) == 0) { dd /= f * f; sq *= f; }
        }
        rest = dd;
        if (sq > 1) { b *= Rat(sq); d = rest; }
        if (d == 1) { a += b; b = 0; d = 0; }
    }

    bool is_rational() const { return is_zero(b); }

    friend QuadSurd operator+(const QuadSurd& x, const Rat& r) { return QuadSurd(x.a + r, x.b, x.d); }
    friend QuadSurd operator-(const QuadSurd& x, const Rat& r) { return QuadSurd(x.a - r, x.b, x.d); }
    friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(-x.a, -x.b, x.d); }

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
        return x.a == y.a && x.b == y.b && x.d == y.d;
    }
    friend bool operator!=(const QuadSurd& x, const QuadSurd& y) { return !(x == y); }

    // sign of a + b sqrt(d), exact
    int sign() const {
        if (is_rational()) return mpq_sgn(a.get_mpq_t());
        int sa = mpq_sgn(a.get_mpq_t()), sb = mpq_sgn(b.get_mpq_t());
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // compare a^2 vs b^2 d; signs differ, so the larger magnitude wins
        Rat lhs = a * a, rhs = b * b * Rat(d);
        if (lhs == rhs) return 0; // cannot happen for squarefree d > 1, kept for safety
        return (lhs > rhs) ? sa : sb;
    }

    friend bool operator<(const QuadSurd& x, const QuadSurd& y) {
        if (x == y) return false;
        // x - y lives in Q(sqrt(dx), sqrt(dy)); handle the shared-field cases
        if (x.d == y.d || x.is_rational() || y.is_rational()) {
            Int d = x.is_rational() ? y.d : x.d;
            QuadSurd diff(x.a - y.a, x.b - y.b, d);
            return diff.sign() < 0;
        }
        // distinct surds: refine rational bounds of sqrt
        for (long prec = 8; prec <= 2048; prec *= 2) {
            Int scale = int_pow(Int(10), static_cast<unsigned long>(prec));
            auto bounds = [&](const QuadSurd& s) {
                Int lo = int_sqrt(s.d * scale * scale); // floor
                Rat slo(lo), shi(lo + 1);
                slo /= Rat(scale); shi /= Rat(scale);
                Rat vlo = s.a + s.b * (s.b >= 0 ? slo : shi);
                Rat vhi = s.a + s.b * (s.b >= 0 ? shi : slo);
                return std::pair<Rat, Rat>(vlo, vhi);
            };
            auto [xlo, xhi] = bounds(x);
            auto [ylo, yhi] = bounds(y);
            if (xhi < ylo) return true;
            if (yhi < xlo) return false;
        }
        throw oretel_error("surd comparison undecided at maximum precision");
    }
    friend bool operator>(const QuadSurd& x, const QuadSurd& y) { return y < x; }
    friend bool operator<=(const QuadSurd& x, const QuadSurd& y) { return !(y < x); }
    friend bool operator>=(const QuadSurd& x, const QuadSurd& y) { return !(x < y); }

    Int floor() const {
        if (is_rational()) return rat_floor(a);
        for (long prec = 8; prec <= 2048; prec *= 2) {
            Int scale = int_pow(Int(10), static_cast<unsigned long>(prec));
            Int lo = int_sqrt(d * scale * scale);
            Rat slo = Rat(lo) / Rat(scale), shi = Rat(lo + 1) / Rat(scale);
            Rat vlo = a + b * (b >= 0 ? slo : shi);
            Rat vhi = a + b * (b >= 0 ? shi : slo);
            if (rat_floor(vlo) == rat_floor(vhi)) return rat_floor(vlo);
        }
        throw oretel_error("surd floor undecided at maximum precision");
    }

    std::string str() const {
        if (is_rational()) return a.get_str();
        return a.get_str() + " + " + b.get_str() + "*sqrt(" + d.get_str() + ")";
    }
};

inline QuadSurd surd_min(const QuadSurd& x, const QuadSurd& y) { return y < x ? y : x; }

} // namespace oretel

#endif
