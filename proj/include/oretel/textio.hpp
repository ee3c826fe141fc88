#ifndef ORETEL_TEXTIO_HPP
#define ORETEL_TEXTIO_HPP

#include "ratfn.hpp"
#include <sstream>
#include <cctype>

namespace oretel {

// ---------- printing ----------
// Polynomials print in the ascending grammar `c0 + c1*x + c2*x^2`; rational
// functions as `(num)/(den)`.  Output is canonical so that parse(print(v)) == v
// bit-exactly for normalized values.

inline std::string q_to_string(const Rat& a) { return a.get_str(); }

inline std::string poly_to_string(const Poly<Rat>& p, const std::string& var);

inline std::string qt_to_string(const QT& a, bool parens_if_composite = false) {
    if (qt_is_rat(a)) return q_to_string(a.num.coeff(0));
    std::string s;
    if (a.den.is_one()) {
        s = poly_to_string(a.num, "t");
        if (parens_if_composite) s = "(" + s + ")";
    } else {
        s = "(" + poly_to_string(a.num, "t") + ")/(" + poly_to_string(a.den, "t") + ")";
    }
    return s;
}

namespace detail {

inline void append_term(std::string& out, const std::string& piece) {
    if (out.empty()) { out = piece; return; }
    if (!piece.empty() && piece[0] == '-')
        out += " - " + piece.substr(1);
    else
        out += " + " + piece;
}

inline std::string coeff_piece(const Rat& c, long i, const std::string& var) {
    std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0) return q_to_string(c);
    if (c == 1) return mon;
    if (c == -1) return "-" + mon;
    return q_to_string(c) + "*" + mon;
}

inline std::string coeff_piece(const QT& c, long i, const std::string& var) {
    std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (qt_is_rat(c)) return coeff_piece(c.num.coeff(0), i, var);
    std::string cs = qt_to_string(c, true);
    if (i == 0) return cs;
    return cs + "*" + mon;
}

} // namespace detail

template<class K>
std::string poly_to_string_k(const Poly<K>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = 0; i <= p.degree(); ++i) {
        if (oretel::is_zero(p.c[static_cast<size_t>(i)])) continue;
        detail::append_term(out, detail::coeff_piece(p.c[static_cast<size_t>(i)], i, var));
    }
    return out;
}

inline std::string poly_to_string(const Poly<Rat>& p, const std::string& var) {
    return poly_to_string_k<Rat>(p, var);
}

template<class K>
std::string ratfn_to_string(const RatFn<K>& f, const std::string& var = "x") {
    if (f.den.is_one()) return poly_to_string_k<K>(f.num, var);
    return "(" + poly_to_string_k<K>(f.num, var) + ")/(" + poly_to_string_k<K>(f.den, var) + ")";
}

// ---------- parsing ----------
// Recursive descent over +, -, *, /, ^, parentheses, integers and the
// variables x, t.  Everything evaluates in QQ(t)(x) and is narrowed afterwards.

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    RatFn<QT> parse() {
        RatFn<QT> v = expr();
        skip_ws();
        check(pos_ == s_.size(), "trailing characters in expression: '" + s_.substr(pos_) + "'");
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() { while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_; }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFn<QT> expr() {
        RatFn<QT> v = term();
        while (true) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }

    RatFn<QT> term() {
        RatFn<QT> v = factor();
        while (true) {
            if (eat('*')) v = v * factor();
            else if (eat('/')) v = v / factor();
            else return v;
        }
    }

    RatFn<QT> factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RatFn<QT> v = atom();
        if (eat('^')) {
            bool neg = eat('-');
            long e = integer_literal();
            RatFn<QT> r(1);
            for (long i = 0; i < e; ++i) r = r * v;
            return neg ? RatFn<QT>(1) / r : r;
        }
        return v;
    }

    long integer_literal() {
        skip_ws();
        check(pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])), "expected integer exponent");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            check(v < 100000, "exponent too large");
            ++pos_;
        }
        return v;
    }

    RatFn<QT> atom() {
        skip_ws();
        check(pos_ < s_.size(), "unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFn<QT> v = expr();
            check(eat(')'), "missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
            return RatFn<QT>(QT(Rat(Int(digits))));
        }
        if (c == 'x') {
            ++pos_;
            return RatFn<QT>::x();
        }
        if (c == 't') {
            ++pos_;
            return RatFn<QT>(QT::x());
        }
        throw oretel_error(std::string("unexpected character '") + c + "' in expression");
    }
};

inline RatFn<QT> parse_expr(const std::string& s) { return ExprParser(s).parse(); }

inline Rat qt_to_q(const QT& a) {
    check(qt_is_rat(a), "value is not free of t: " + qt_to_string(a));
    return a.num.coeff(0);
}

inline RatFn<Rat> narrow_to_q(const RatFn<QT>& f) {
    Poly<Rat> n, d;
    n.c.reserve(f.num.c.size());
    for (auto& cc : f.num.c) n.c.push_back(qt_to_q(cc));
    for (auto& cc : f.den.c) d.c.push_back(qt_to_q(cc));
    n.trim(); d.trim();
    return RatFn<Rat>(n, d);
}

template<class K> RatFn<K> parse_ratfn(const std::string& s);
template<> inline RatFn<QT> parse_ratfn<QT>(const std::string& s) { return parse_expr(s); }
template<> inline RatFn<Rat> parse_ratfn<Rat>(const std::string& s) { return narrow_to_q(parse_expr(s)); }

template<class K>
Poly<K> parse_poly(const std::string& s) {
    RatFn<K> f = parse_ratfn<K>(s);
    check(f.den.is_one(), "expression is not polynomial: " + s);
    return f.num;
}

inline QT parse_qt(const std::string& s) {
    RatFn<QT> f = parse_expr(s);
    check(f.num.is_constant() && f.den.is_constant(), "expression is not free of x: " + s);
    return f.num.coeff(0) / f.den.coeff(0);
}

inline Rat parse_q(const std::string& s) { return qt_to_q(parse_qt(s)); }

template<class K> std::string coeff_to_string(const K& c);
template<> inline std::string coeff_to_string<Rat>(const Rat& c) { return q_to_string(c); }
template<> inline std::string coeff_to_string<QT>(const QT& c) { return qt_to_string(c); }

template<class K> K parse_coeff(const std::string& s);
template<> inline Rat parse_coeff<Rat>(const std::string& s) { return parse_q(s); }
template<> inline QT parse_coeff<QT>(const std::string& s) { return parse_qt(s); }

} // namespace oretel

#endif
