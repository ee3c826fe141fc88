#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oretel/redinfty.hpp>
#include <oretel/ibinfty.hpp>
#include <oretel/textio.hpp>
#include <random>

using namespace oretel;

namespace {

AnnCtxPtr<Rat> example2_ctx() {
    std::vector<Poly<Rat>> ell{
        parse_poly<Rat>("1"),
        parse_poly<Rat>("-2*(x+2)"),
        parse_poly<Rat>("(x+2)*(x+3)")};
    return std::make_shared<AnnCtx<Rat>>(std::move(ell));
}

// the reference integral basis at infinity as a frame
FramePtr<Rat> infinity_frame_ord2(AnnCtxPtr<Rat> ctx) {
    Mat<RatFn<Rat>> T(2, 2);
    T(0, 0) = parse_ratfn<Rat>("-x^3-x^2");
    T(0, 1) = parse_ratfn<Rat>("x^4+2*x^3");
    T(1, 0) = parse_ratfn<Rat>("-x^2");
    T(1, 1) = parse_ratfn<Rat>("x^3+2*x^2");
    return make_frame(ctx, T, "V");
}

} // namespace

TEST_CASE("laurent coefficients") {
    RatFn<Rat> f = parse_ratfn<Rat>("(x^3+2)/(x^2*(x+2))");
    // f = 1 - 2/x + 4/x^2 + ...
    auto c = laurent_coeffs(f, 0, 3);
    CHECK(c[0] == Rat(1));
    CHECK(c[1] == Rat(-2));
    CHECK(c[2] == Rat(4));
    auto c2 = laurent_coeffs(f, 2, 3);
    CHECK(c2[0] == Rat(0));
    CHECK(c2[1] == Rat(0));
    CHECK(c2[2] == Rat(1));
}

TEST_CASE("reference frame data at infinity") {
    auto ctx = example2_ctx();
    auto V = infinity_frame_ord2(ctx);
    auto R = make_inf_reduction(V);
    CHECK(R.lambda == 0);
    CHECK(R.a == parse_poly<Rat>("x^2*(x+2)").monic());
    // Delta V diagonal with entries (-x^3-x^2+2x+1)/(x^2(x+2))
    CHECK(R.B(0, 0) == parse_poly<Rat>("-x^3-x^2+2*x+1"));
    CHECK(R.B(0, 1).is_zero());
    CHECK(R.B(1, 0).is_zero());
    CHECK(R.B(1, 1) == parse_poly<Rat>("-x^3-x^2+2*x+1"));
}

TEST_CASE("acceptance: golden reduction step at infinity") {
    auto ctx = example2_ctx();
    auto V = infinity_frame_ord2(ctx);
    auto R = make_inf_reduction(V);

    // k = 0, a = ((x^3+2)/(x^2(x+2)), (2x^3+3)/(x^2(x+2))) -> b = (-1/x, -2/x)
    std::vector<RatFn<Rat>> avec{
        parse_ratfn<Rat>("(x^3+2)/(x^2*(x+2))"),
        parse_ratfn<Rat>("(2*x^3+3)/(x^2*(x+2))")};
    auto b = reduce_once(R, 0, avec);
    CHECK(b[0] == parse_ratfn<Rat>("-1/x"));
    CHECK(b[1] == parse_ratfn<Rat>("-2/x"));

    // full reduction: f = Delta(-v1 - 2 v2) + remainder
    ModElem<Rat> g = zero_elem(V);
    std::vector<RatFn<Rat>> h;
    reduce_at_infinity(R, avec, g, h);
    CHECK(g.coord[0] == RatFn<Rat>(Poly<Rat>(-1)));
    CHECK(g.coord[1] == RatFn<Rat>(Poly<Rat>(-2)));
    // the remainder is pinned by the identity f - Delta(-v1-2v2); the values
    // below are additionally confirmed by the pointwise oracle underneath
    CHECK(h[0] == parse_ratfn<Rat>("(-x^2+2*x+3)/(x^2*(x+2))"));
    CHECK(h[1] == parse_ratfn<Rat>("(-2*x^2+4*x+5)/(x^2*(x+2))"));

    // exactness in A and the degree bound
    ModElem<Rat> f(V, avec);
    ModElem<Rat> back = delta(g) + ModElem<Rat>(V, h);
    CHECK(equal_in_A(f, back));
    for (auto& c : h) CHECK(c.degree() < std::max<long>(0, R.lambda));

    // pointwise oracle on the solution u(x) = 1/x!: at x = 2,
    // (f.u)(2) = 3/8, (Delta g . u)(2) = 7/24, so (h.u)(2) = 1/12
    auto act = [](const std::vector<RatFn<Rat>>& co, const FramePtr<Rat>& fr, const Rat& xv,
                  auto u) -> Rat {
        // standard coordinates act on the sequence u
        ModElem<Rat> el(fr, co);
        auto sc = el.standard_coords();
        Rat out(0);
        for (size_t i = 0; i < sc.size(); ++i) {
            if (sc[i].is_zero()) continue;
            Rat num = sc[i].num.eval<Rat>(xv), den = sc[i].den.eval<Rat>(xv);
            out += num / den * u(xv + Rat(static_cast<long>(i)));
        }
        return out;
    };
    auto fact_inv = [](const Rat& xv) -> Rat {
        Rat f2(1);
        for (long i = 2; i <= xv.get_num().get_si(); ++i) f2 *= Rat(i);
        return Rat(Rat(1) / f2);
    };
    Rat hv = act(h, V, Rat(2), fact_inv);
    CHECK(hv == Rat(1, 12));
}

TEST_CASE("psi basis is integral at infinity when lambda = 0") {
    auto ctx = example2_ctx();
    auto V = infinity_frame_ord2(ctx);
    auto R = make_inf_reduction(V);
    auto psis = psi_basis(R, 0);
    InfEngine<Rat> engine(ctx);
    for (auto& p : psis) {
        auto v = engine.val(p);
        REQUIRE(!v.infinite);
        CHECK(v.val >= QuadSurd(0));
    }
}

TEST_CASE("already reduced inputs pass through") {
    auto ctx = example2_ctx();
    auto V = infinity_frame_ord2(ctx);
    auto R = make_inf_reduction(V);
    std::vector<RatFn<Rat>> f{parse_ratfn<Rat>("1/(x+5)"), parse_ratfn<Rat>("0")};
    ModElem<Rat> g = zero_elem(V);
    std::vector<RatFn<Rat>> h;
    reduce_at_infinity(R, f, g, h);
    CHECK(g.is_zero());
    CHECK(h == f);
}

TEST_CASE("summable inputs with bounded coordinates reduce to bounded witnesses") {
    auto ctx = example2_ctx();
    auto V = infinity_frame_ord2(ctx);
    auto R = make_inf_reduction(V);
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 40; ++it) {
        // g0 with polynomial coordinates of degree <= 2
        Poly<Rat> p1, p2;
        for (int i = 0; i < 3; ++i) { p1.c.push_back(rat_of(c(rng))); p2.c.push_back(rat_of(c(rng))); }
        p1.trim(); p2.trim();
        ModElem<Rat> g0(V, {RatFn<Rat>(p1), RatFn<Rat>(p2)});
        ModElem<Rat> f = delta(g0);
        if (f.is_zero()) continue;
        ModElem<Rat> g = zero_elem(V);
        std::vector<RatFn<Rat>> h;
        reduce_at_infinity(R, f.coord, g, h);
        ModElem<Rat> back = delta(g) + ModElem<Rat>(V, h);
        CHECK(equal_in_A(f, back));
        for (auto& cc : h)
            if (!cc.is_zero()) CHECK(cc.degree() < std::max<long>(0, R.lambda));
        // g has polynomial coordinates
        for (auto& cc : g.coord) CHECK(cc.is_polynomial());
    }
}

TEST_CASE("lambda below -1 uses the closed-form step") {
    // L = S - 1, V = {1}: Delta(1) = 0
    std::vector<Poly<Rat>> ell{parse_poly<Rat>("-1"), parse_poly<Rat>("1")};
    AnnCtxPtr<Rat> ctx = std::make_shared<AnnCtx<Rat>>(std::move(ell));
    auto V = standard_frame(ctx);
    auto R = make_inf_reduction(V);
    CHECK(R.small_lambda());
    std::vector<RatFn<Rat>> f{RatFn<Rat>(parse_poly<Rat>("x^2+1"))};
    ModElem<Rat> g = zero_elem(V);
    std::vector<RatFn<Rat>> h;
    reduce_at_infinity(R, f, g, h);
    ModElem<Rat> back = delta(g) + ModElem<Rat>(V, h);
    CHECK(equal_in_A(ModElem<Rat>(V, f), back));
    CHECK((h[0].is_zero() || h[0].degree() < 0));
}
