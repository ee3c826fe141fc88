#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oretel/decomp.hpp>
#include <oretel/textio.hpp>
#include <random>

using namespace oretel;

namespace {

AnnCtxPtr<QT> bivar_ctx() {
    std::vector<Poly<QT>> ell{
        parse_poly<QT>("x^2+(t^2+3)*x+t^2+3"),
        parse_poly<QT>("-(x^3+(t^2+5)*x^2+(3*t^2+7)*x+t^2+4)"),
        parse_poly<QT>("(x+2)*(x^2+(t^2+1)*x+1)")};
    return std::make_shared<AnnCtx<QT>>(std::move(ell));
}

// the bivariate reference frames
DecompPipeline<QT> bivar_pipeline() {
    auto ctx = bivar_ctx();
    Mat<RatFn<QT>> T(2, 2);
    Poly<QT> D = parse_poly<QT>("x^2+(t^2+1)*x+1");
    T(0, 0) = RatFn<QT>(parse_poly<QT>("-(t^2-1)*(x+t^2+1)"), D);
    T(0, 1) = RatFn<QT>(parse_poly<QT>("(t^2-1)*(x+t^2)"), D);
    T(1, 0) = RatFn<QT>(parse_poly<QT>("-(x+t^2)/(t^2-1)"), D);
    T(1, 1) = RatFn<QT>(Poly<QT>(1), D);
    auto W = make_frame(ctx, T, "W");
    SuitableBasis<QT> sb;
    sb.frame = W;
    sb.orbits = singular_orbits(*ctx);
    for (auto& orb : sb.orbits) orb.beta = orb.roots.back();
    Mat<RatFn<QT>> TV(2, 2);
    TV(0, 0) = RatFn<QT>(Poly<QT>::x()) * T(0, 0);
    TV(0, 1) = RatFn<QT>(Poly<QT>::x()) * T(0, 1);
    TV(1, 0) = T(1, 0);
    TV(1, 1) = T(1, 1);
    auto V = make_frame(ctx, TV, "V");
    return make_pipeline_with_frames<QT>(ctx, std::move(sb), V, {1, 0});
}

AnnCtxPtr<Rat> example2_ctx() {
    std::vector<Poly<Rat>> ell{
        parse_poly<Rat>("1"),
        parse_poly<Rat>("-2*(x+2)"),
        parse_poly<Rat>("(x+2)*(x+3)")};
    return std::make_shared<AnnCtx<Rat>>(std::move(ell));
}

} // namespace

TEST_CASE("bivariate pipeline windows") {
    auto D = bivar_pipeline();
    CHECK(D.a == parse_poly<QT>("x*(x+2)"));
    CHECK(D.lam1 == 1);
    CHECK(D.lam2 == 0);
    CHECK(D.mu == -1);
    CHECK(D.delta == 1);
    CHECK(D.deltap == 0);
    // summable space is one-dimensional, spanned by Q = -(x+1) e_1, i.e.
    // Delta((1/x) v_1) = -(x+1)/(x(x+2)) v_1
    REQUIRE(D.summ.rows.size() == 1);
    auto Q = from_window_flat(D.summ.win, D.summ.rows[0]);
    // normalized to pivot 1 at the highest exponent: Q = (x+1, 0)
    CHECK(Q[0] == RatFn<QT>(parse_poly<QT>("x+1")));
    CHECK(Q[1].is_zero());
}

TEST_CASE("acceptance: bivariate golden additive decomposition") {
    auto D = bivar_pipeline();
    const size_t r = 2;
    // f = 1/(x+t) in the standard frame
    auto U = standard_frame(D.ctx);
    ModElem<QT> f(U, {RatFn<QT>(Poly<QT>(1), parse_poly<QT>("x+t")), RatFn<QT>(0)});

    // representation in W: f = (1/(x+t)) (1, -(t-1)^2 t (t+1)) W + (0, -(t^2-1)) V
    ModElem<QT> fw = change_frame(f, D.sb.frame);
    // proper part check
    Poly<QT> xt = parse_poly<QT>("x+t");
    CHECK(fw.coord[0] == RatFn<QT>(Poly<QT>(1), xt));

    auto dec = additive_decompose(f, D);
    // h0 = (1/(x+t)) (1, -(t-1)^2 t(t+1)) W + (1/(x(x+2))) (-1/(t^2-1), 0) V
    CHECK(dec.d == xt);
    CHECK(dec.P[0] == Poly<QT>(1));
    CHECK(dec.P[1] == parse_poly<QT>("-(t-1)^2*t*(t+1)"));
    CHECK(dec.Q[0] == RatFn<QT>(Poly<QT>(parse_qt("-1/(t^2-1)"))));
    CHECK(dec.Q[1].is_zero());

    // exact reconstruction
    ModElem<QT> back = delta(dec.g) + remainder_value(dec, D);
    CHECK(equal_in_A(change_frame(f, D.V), back));

    // g_0 = (1/(t^2-1), -(t^2-1) x) V + (1/((t^2-1)x), 0) V
    ModElem<QT> g0(D.V, {RatFn<QT>(Poly<QT>(parse_qt("1/(t^2-1)"))) +
                             RatFn<QT>(Poly<QT>(parse_qt("1/(t^2-1)")), Poly<QT>::x()),
                         RatFn<QT>(Poly<QT>(parse_qt("-(t^2-1)")) * Poly<QT>::x())});
    CHECK(equal_in_A(dec.g, g0));
    (void)r;
}

TEST_CASE("summable inputs decompose to zero remainder with certificate") {
    auto ctx = example2_ctx();
    auto D = make_pipeline(ctx);
    std::mt19937 rng(2026);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 25; ++it) {
        Poly<Rat> p1, p2;
        for (int i = 0; i < 3; ++i) { p1.c.push_back(rat_of(c(rng))); p2.c.push_back(rat_of(c(rng))); }
        p1.trim(); p2.trim();
        Poly<Rat> den = parse_poly<Rat>(it % 2 == 0 ? "x+1" : "1");
        ModElem<Rat> g0(D.sb.frame, {RatFn<Rat>(p1, den), RatFn<Rat>(p2)});
        ModElem<Rat> f = delta(g0);
        if (f.is_zero()) continue;
        auto v = is_summable(f, D);
        CHECK(v.summable);
        CHECK(equal_in_A(delta(v.certificate), f));
    }
}

TEST_CASE("the order-2 golden example is not summable with witness P") {
    auto ctx = example2_ctx();
    auto D = make_pipeline(ctx);
    Poly<Rat> den = parse_poly<Rat>("(x+1)*(x+2)");
    ModElem<Rat> f(D.sb.frame, {RatFn<Rat>(Poly<Rat>(1), den), RatFn<Rat>(Poly<Rat>::x(), den)});
    auto v = is_summable(f, D);
    CHECK(!v.summable);
    CHECK(!v.witness.P[0].is_zero());
    // reconstruction of the full decomposition
    ModElem<Rat> back = delta(v.witness.g) + remainder_value(v.witness, D);
    CHECK(equal_in_A(change_frame(f, D.V), back));
}

TEST_CASE("refinement is idempotent") {
    auto D = bivar_pipeline();
    std::vector<RatFn<QT>> Q{
        RatFn<QT>(parse_poly<QT>("(t+3)*x + 1")) + RatFn<QT>(Poly<QT>(1), Poly<QT>::x()),
        RatFn<QT>(parse_poly<QT>("2 - x"))};
    std::vector<QT> flat;
    REQUIRE(to_window_flat(D.summ.win, Q, flat));
    refine_Q(D, flat);
    std::vector<QT> once = flat;
    auto used2 = refine_Q(D, flat);
    CHECK(flat == once);
    for (auto& u : used2) CHECK(is_zero(u));
}

TEST_CASE("random decompositions reconstruct exactly") {
    auto ctx = example2_ctx();
    auto D = make_pipeline(ctx);
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 20; ++it) {
        Poly<Rat> p1, p2;
        for (int i = 0; i < 2; ++i) { p1.c.push_back(rat_of(c(rng))); p2.c.push_back(rat_of(c(rng))); }
        p1.trim(); p2.trim();
        Poly<Rat> den = parse_poly<Rat>(it % 3 == 0 ? "(x+1)*(x+5)" : "x^2+1");
        ModElem<Rat> f(D.sb.frame, {RatFn<Rat>(p1, den), RatFn<Rat>(p2, den)});
        if (f.is_zero()) continue;
        auto dec = additive_decompose(f, D);
        ModElem<Rat> back = delta(dec.g) + remainder_value(dec, D);
        CHECK(equal_in_A(change_frame(f, D.V), back));
        // windows
        long degP = -1;
        for (auto& p : dec.P) degP = std::max(degP, p.degree());
        if (!dec.d.is_one()) CHECK(degP < dec.d.degree());
        CHECK(is_shift_free(dec.d * D.sb.beta_product()));
    }
}
