#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oretel/factor.hpp>
#include <oretel/textio.hpp>
#include <random>

using namespace oretel;

namespace {

std::mt19937 rng(987654);

Poly<Rat> rand_zpoly(int maxdeg, int bound = 6) {
    std::uniform_int_distribution<int> d(1, maxdeg), c(-bound, bound);
    Poly<Rat> p;
    int deg = d(rng);
    for (int i = 0; i < deg; ++i) p.c.push_back(rat_of(c(rng)));
    p.c.push_back(rat_of(c(rng) == 0 ? 1 : c(rng)));
    if (is_zero(p.c.back())) p.c.back() = Rat(1);
    p.trim();
    if (p.is_zero()) p = Poly<Rat>(1);
    return p;
}

template<class K>
Poly<K> product_of(const FactorResult<K>& f) {
    Poly<K> r{};
    r = Poly<K>(1) * f.unit;
    for (auto& [g, m] : f.factors) r = r * poly_pow(g, static_cast<unsigned long>(m));
    return r;
}

} // namespace

TEST_CASE("factorization over QQ reconstructs input") {
    for (int it = 0; it < 60; ++it) {
        Poly<Rat> p = rand_zpoly(3) * rand_zpoly(3) * rand_zpoly(2);
        if (p.degree() < 1) continue;
        auto f = factor_poly(p);
        CHECK(product_of(f) == p);
        for (auto& [g, m] : f.factors) {
            CHECK(g.lc() == Rat(1));
            CHECK(m >= 1);
        }
    }
}

TEST_CASE("known factorizations over QQ") {
    auto f = factor_poly(parse_poly<Rat>("x^4-1"));
    CHECK(f.factors.size() == 3);
    auto g = factor_poly(parse_poly<Rat>("x^2+1"));
    CHECK(g.factors.size() == 1);
    CHECK(g.factors[0].first == parse_poly<Rat>("x^2+1"));
    auto h = factor_poly(parse_poly<Rat>("x^6+2*x^5-2*x^4-6*x^3+x^2+4*x+1"));
    Poly<Rat> prod(1);
    for (auto& [p, m] : h.factors) prod = prod * poly_pow(p, static_cast<unsigned long>(m));
    CHECK(prod * Poly<Rat>(h.unit) == parse_poly<Rat>("x^6+2*x^5-2*x^4-6*x^3+x^2+4*x+1"));
    // squares
    auto s = factor_poly(parse_poly<Rat>("x^2*(x+2)"));
    bool saw_sq = false;
    for (auto& [p, m] : s.factors) if (p == Poly<Rat>::x() && m == 2) saw_sq = true;
    CHECK(saw_sq);
}

TEST_CASE("integer roots") {
    Poly<Rat> p = parse_poly<Rat>("(x-3)*(x+5)*(x^2+1)*(2*x-1)");
    auto roots = integer_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -5);
    CHECK(roots[1] == 3);
}

TEST_CASE("factorization over QQ(t)") {
    // (x+t)(x+t+1)
    Poly<QT> p = parse_poly<QT>("(x+t)*(x+t+1)");
    auto f = factor_poly(p);
    REQUIRE(f.factors.size() == 2);
    CHECK(product_of(f) == p);

    // irreducible over QQ(t): x^2 + (t^2+1)x + 1
    Poly<QT> q = parse_poly<QT>("x^2+(t^2+1)*x+1");
    auto g = factor_poly(q);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].first == q);

    // x^2 - t^2 = (x-t)(x+t)
    Poly<QT> r = parse_poly<QT>("x^2-t^2");
    auto h = factor_poly(r);
    REQUIRE(h.factors.size() == 2);
    CHECK(product_of(h) == r);

    // rational-function coefficients
    Poly<QT> s = parse_poly<QT>("(x+t/(t+1))*(x-1/t)");
    auto fs = factor_poly(s);
    REQUIRE(fs.factors.size() == 2);
    CHECK(product_of(fs) == s);

    // trailing-times-leading coefficient of the bivariate operator
    Poly<QT> l0lr = parse_poly<QT>("(x^2+(t^2+3)*x+t^2+3)*(x+2)*(x^2+(t^2+1)*x+1)");
    auto ff = factor_poly(l0lr);
    CHECK(product_of(ff) == l0lr);
    CHECK(ff.factors.size() == 3);
}

TEST_CASE("integer roots over QQ(t)") {
    Poly<QT> p = parse_poly<QT>("(x-2)*(x+t)*(x-7)");
    auto roots = integer_roots_k<QT>(p);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == 2);
    CHECK(roots[1] == 7);
}
