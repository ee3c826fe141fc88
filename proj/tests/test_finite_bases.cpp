#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oretel/finite_bases.hpp>
#include <oretel/textio.hpp>

using namespace oretel;

namespace {

AnnCtxPtr<Rat> example2_ctx() {
    std::vector<Poly<Rat>> ell{
        parse_poly<Rat>("1"),
        parse_poly<Rat>("-2*(x+2)"),
        parse_poly<Rat>("(x+2)*(x+3)")};
    return std::make_shared<AnnCtx<Rat>>(std::move(ell));
}

AnnCtxPtr<Rat> example_ord1_ctx() {
    std::vector<Poly<Rat>> ell{
        parse_poly<Rat>("-(x+1)^4"),
        parse_poly<Rat>("x^2*(x+2)")};
    return std::make_shared<AnnCtx<Rat>>(std::move(ell));
}

AnnCtxPtr<QT> bivar_ctx() {
    std::vector<Poly<QT>> ell{
        parse_poly<QT>("x^2+(t^2+3)*x+t^2+3"),
        parse_poly<QT>("-(x^3+(t^2+5)*x^2+(3*t^2+7)*x+t^2+4)"),
        parse_poly<QT>("(x+2)*(x^2+(t^2+1)*x+1)")};
    return std::make_shared<AnnCtx<QT>>(std::move(ell));
}

} // namespace

TEST_CASE("singular orbits") {
    auto orbs = singular_orbits(*example2_ctx());
    REQUIRE(orbs.size() == 1);
    CHECK(orbs[0].rep == parse_poly<Rat>("x+3"));
    CHECK(orbs[0].roots == std::vector<long>{0, 1});
    CHECK(orbs[0].z_offsets() == std::vector<long>{1});

    auto orbs1 = singular_orbits(*example_ord1_ctx());
    REQUIRE(orbs1.size() == 1);
    CHECK(orbs1[0].rep == parse_poly<Rat>("x+2"));
    CHECK(orbs1[0].roots == std::vector<long>{0, 1, 2});
    CHECK(orbs1[0].z_offsets() == std::vector<long>{1, 2});

    // over QQ(t) the two quadratic factors are sigma-shifts of each other, so
    // the singularities fall into two orbit classes
    auto orbs7 = singular_orbits(*bivar_ctx());
    REQUIRE(orbs7.size() == 2);
    for (auto& orb : orbs7) {
        if (orb.rep.degree() == 2) {
            CHECK(orb.roots == std::vector<long>{0, 1});
            // the beta points carry the minimal polynomial x^2+(t^2+1)x+1
            CHECK(orb.point_minpoly(orb.beta) == parse_poly<QT>("x^2+(t^2+1)*x+1"));
        } else {
            CHECK(orb.rep == parse_poly<QT>("x+2"));
            CHECK(orb.roots == std::vector<long>{0});
        }
    }
}

TEST_CASE("acceptance example: order-1 integral basis at {-1,0}") {
    auto ctx = example_ord1_ctx();
    auto orbs = singular_orbits(*ctx);
    auto W = local_integral_basis(ctx, orbs);
    REQUIRE(W->dim() == 1);
    // (x+1) x^{-3} up to a unit
    RatFn<Rat> expect = parse_ratfn<Rat>("(x+1)/x^3");
    CHECK(W->T(0, 0) == expect);
    // S W = x W, e = 1
    CHECK(W->e == Poly<Rat>(1));
    CHECK(W->M(0, 0) == Poly<Rat>::x());
}

TEST_CASE("order-1 example with larger beta") {
    auto ctx = example_ord1_ctx();
    auto orbs = singular_orbits(*ctx);
    orbs[0].beta = orbs[0].roots.back() + 2; // Z = {-1, 0, 1, 2}
    auto W = local_integral_basis(ctx, orbs);
    REQUIRE(W->dim() == 1);
    RatFn<Rat> expect = parse_ratfn<Rat>("(x+1)/(x^3*(x-1)*(x-2))");
    CHECK(W->T(0, 0) == expect);
    CHECK(W->e == Poly<Rat>(1));
    CHECK(W->M(0, 0) == parse_poly<Rat>("x-2"));
}

TEST_CASE("acceptance example 2: suitable basis") {
    auto ctx = example2_ctx();
    auto sb = suitable_basis(ctx);
    REQUIRE(sb.frame->dim() == 2);
    // W = (1, (x+2) S) exactly under our normalization
    CHECK(sb.frame->T(0, 0) == RatFn<Rat>(1));
    CHECK(sb.frame->T(0, 1).is_zero());
    CHECK(sb.frame->T(1, 0).is_zero());
    CHECK(sb.frame->T(1, 1) == RatFn<Rat>(parse_poly<Rat>("x+2")));
    CHECK(sb.frame->e == parse_poly<Rat>("x+2"));
    CHECK(sb.frame->M(0, 1) == Poly<Rat>(1));
    CHECK(sb.frame->M(1, 0) == Poly<Rat>(-1));
    CHECK(sb.frame->M(1, 1) == Poly<Rat>(2));
    CHECK(sb.frame->ftil == Poly<Rat>(1));
    // theorem: e and ftil shift-free with roots only at the betas
    CHECK(is_shift_free(sb.frame->e));
    CHECK(is_shift_free(sb.frame->ftil));
    CHECK(is_shift_free(sb.frame->e * sb.beta_product()));
}

TEST_CASE("empty Z leaves the standard basis") {
    // constant l_0 l_r: no singular orbits
    std::vector<Poly<Rat>> ell{parse_poly<Rat>("1"), parse_poly<Rat>("2")};
    AnnCtxPtr<Rat> ctx = std::make_shared<AnnCtx<Rat>>(std::move(ell));
    auto sb = suitable_basis(ctx);
    CHECK(sb.orbits.empty());
    CHECK(sb.frame->T == Mat<RatFn<Rat>>::identity(1));
}

TEST_CASE("suitable basis for the bivariate operator") {
    auto ctx = bivar_ctx();
    auto sb = suitable_basis(ctx);
    REQUIRE(sb.frame->dim() == 2);
    CHECK(is_shift_free(sb.frame->e));
    CHECK(is_shift_free(sb.frame->ftil));
    CHECK(is_shift_free(sb.frame->e * sb.beta_product()));
    // e divides the product of beta minimal polynomials
    Poly<QT> bp = sb.beta_product();
    CHECK(divides(poly_gcd(sb.frame->e, bp), sb.frame->e));

    // W is locally integral on Z
    for (auto& orb : sb.orbits) {
        if (orb.z_offsets().empty()) continue;
        auto engine = make_val_engine<QT>(ctx, orb.rep, orb.roots.front());
        for (long m : orb.z_offsets())
            for (size_t i = 0; i < 2; ++i) {
                ModElem<QT> w(sb.frame, {RatFn<QT>(i == 0 ? 1 : 0), RatFn<QT>(i == 0 ? 0 : 1)});
                auto v = engine.val(w, m);
                CHECK((!v.finite || v.val >= 0));
            }
    }
}

TEST_CASE("transition matrices have poles only inside Z") {
    auto ctx = example2_ctx();
    auto sb = suitable_basis(ctx);
    // Z = {-2}: T and Tinv may have poles there and nowhere else, which is
    // the "same module as U outside Z" half of suitability
    Poly<Rat> allowed = parse_poly<Rat>("x+2");
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            for (const RatFn<Rat>& c : {sb.frame->T(i, j), sb.frame->Tinv(i, j)}) {
                Poly<Rat> d = c.den;
                while (d.degree() > 0) {
                    Poly<Rat> g = poly_gcd(d, allowed);
                    REQUIRE(g.degree() > 0);
                    d = d / g;
                }
            }
        }
}

TEST_CASE("dispersion grows under differencing in a fully integral basis") {
    // order-1 operator with constant coefficients: U = {1} is integral on the
    // whole orbit, so the denominator of Delta g gains one unit of dispersion
    std::vector<Poly<Rat>> ell{parse_poly<Rat>("-1"), parse_poly<Rat>("2")};
    AnnCtxPtr<Rat> ctx = std::make_shared<AnnCtx<Rat>>(std::move(ell));
    auto U = standard_frame(ctx);
    std::mt19937 rng(808);
    std::uniform_int_distribution<int> root(-3, 3), c(-4, 4);
    int done = 0;
    for (int it = 0; it < 120 && done < 50; ++it) {
        Poly<Rat> v(1);
        int n = 1 + it % 3;
        for (int i = 0; i < n; ++i) v = v * (Poly<Rat>::x() - Poly<Rat>(rat_of(root(rng))));
        auto dv = dispersion_self(v);
        if (!dv) continue;
        Poly<Rat> b;
        for (int i = 0; i < 2; ++i) b.c.push_back(rat_of(c(rng)));
        b.trim();
        if (b.is_zero()) continue;
        ModElem<Rat> g(U, {RatFn<Rat>(b, v)});
        ModElem<Rat> f = delta(g);
        if (f.is_zero()) continue;
        RatFn<Rat> fc = f.coord[0];
        if (fc.den.degree() < 1) continue;
        auto du = dispersion_self(fc.den);
        REQUIRE(du.has_value());
        CHECK(*du >= *dv + 1);
        ++done;
    }
    CHECK(done > 0);
}
