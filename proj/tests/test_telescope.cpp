#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oretel/telescope.hpp>
#include <oretel/textio.hpp>

using namespace oretel;

namespace {

AnnCtxPtr<QT> bivar_ctx() {
    std::vector<Poly<QT>> ell{
        parse_poly<QT>("x^2+(t^2+3)*x+t^2+3"),
        parse_poly<QT>("-(x^3+(t^2+5)*x^2+(3*t^2+7)*x+t^2+4)"),
        parse_poly<QT>("(x+2)*(x^2+(t^2+1)*x+1)")};
    return std::make_shared<AnnCtx<QT>>(std::move(ell));
}

OreOp<QT> bivar_ut() {
    // S_t = (2t+1)(x+1)/(x^2+(t^2+1)x+1) S_x + (x^2+(t^2+1)x-2t)/(x^2+(t^2+1)x+1),
    // pinned by S_t F = u_t F for F = x+t^2+1/x! at integer points
    Poly<QT> D = parse_poly<QT>("x^2+(t^2+1)*x+1");
    std::vector<RatFn<QT>> c{
        RatFn<QT>(parse_poly<QT>("x^2+(t^2+1)*x-2*t"), D),
        RatFn<QT>(parse_poly<QT>("(2*t+1)*(x+1)"), D)};
    return OreOp<QT>(std::move(c));
}

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

BivariateCtx bivar_bctx() { return make_bivariate(bivar_pipeline(), bivar_ut()); }

} // namespace

TEST_CASE("S_t action matrices on the frames are diagonal") {
    auto B = bivar_bctx();
    const auto& W = B.D.sb.frame;
    // S_t w_1 = t(t+2)/(t^2-1) w_1, S_t w_2 = (t^2-1)/(t(t+2)) w_2
    ModElem<QT> w1(W, {RatFn<QT>(1), RatFn<QT>(0)});
    ModElem<QT> w2(W, {RatFn<QT>(0), RatFn<QT>(1)});
    auto sw1 = change_frame(shift_t(w1, B), W);
    auto sw2 = change_frame(shift_t(w2, B), W);
    QT c11 = parse_qt("t*(t+2)/(t^2-1)"), c22 = parse_qt("(t^2-1)/(t*(t+2))");
    CHECK(sw1.coord[0] == RatFn<QT>(Poly<QT>(c11)));
    CHECK(sw1.coord[1].is_zero());
    CHECK(sw2.coord[0].is_zero());
    CHECK(sw2.coord[1] == RatFn<QT>(Poly<QT>(c22)));
    // same diagonal on V
    ModElem<QT> v1(B.D.V, {RatFn<QT>(1), RatFn<QT>(0)});
    auto sv1 = change_frame(shift_t(v1, B), B.D.V);
    CHECK(sv1.coord[0] == RatFn<QT>(Poly<QT>(c11)));
}

TEST_CASE("S_t and S_x commute on random elements") {
    auto B = bivar_bctx();
    auto U = standard_frame(B.D.ctx);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-2, 2);
    for (int it = 0; it < 10; ++it) {
        Poly<QT> p1, p2;
        for (int i = 0; i < 2; ++i) {
            p1.c.push_back(QT(rat_of(c(rng))) + qt_t() * QT(rat_of(c(rng))));
            p2.c.push_back(QT(rat_of(c(rng))));
        }
        p1.trim(); p2.trim();
        ModElem<QT> f(U, {RatFn<QT>(p1), RatFn<QT>(p2, parse_poly<QT>("x+t"))});
        auto a = shift_t(apply_S(f), B);
        auto b = apply_S(shift_t(f, B));
        CHECK(equal_in_A(a, b));
    }
}

TEST_CASE("trivial telescoper for summable input") {
    auto B = bivar_bctx();
    ModElem<QT> g0(B.D.V, {RatFn<QT>(Poly<QT>::x()), RatFn<QT>(1)});
    ModElem<QT> f = delta(g0);
    auto T = telescoper(f, B, 4);
    REQUIRE(T.found);
    CHECK(T.coeffs.size() == 1);
    CHECK(T.coeffs[0] == QT(1));
    REQUIRE(T.have_certificate);
    CHECK(equal_in_A(delta(T.certificate), f));
}

TEST_CASE("acceptance: the minimal telescoper of 1/(x+t)") {
    auto B = bivar_bctx();
    auto U = standard_frame(B.D.ctx);
    ModElem<QT> f(U, {RatFn<QT>(Poly<QT>(1), parse_poly<QT>("x+t")), RatFn<QT>(0)});
    auto T = telescoper(f, B, 6);
    REQUIRE(T.found);
    REQUIRE(T.coeffs.size() == 4);

    // expected: (3t^2+3t+2) S^3 + (3t^3+3t^2-4t-6) S^2 - (6t^3+15t^2+13t+2) S + 3t^3+9t^2+8t
    CHECK(T.coeffs[3] == parse_qt("3*t^2+3*t+2"));
    CHECK(T.coeffs[2] == parse_qt("3*t^3+3*t^2-4*t-6"));
    CHECK(T.coeffs[1] == parse_qt("-(6*t^3+15*t^2+13*t+2)"));
    CHECK(T.coeffs[0] == parse_qt("3*t^3+9*t^2+8*t"));

    // intermediate aligned remainders
    REQUIRE(T.remainders.size() == 4);
    const Poly<QT> xt = parse_poly<QT>("x+t");
    auto checkrem = [&](size_t i, const char* p1, const char* p2, const char* q1) {
        const auto& dec = T.remainders[i];
        CHECK(dec.d == xt);
        CHECK(dec.P[0] == parse_poly<QT>(p1));
        CHECK(dec.P[1] == parse_poly<QT>(p2));
        CHECK(dec.Q[0] == RatFn<QT>(Poly<QT>(parse_qt(q1))));
        CHECK(dec.Q[1].is_zero());
    };
    checkrem(0, "1", "-(t-1)^2*t*(t+1)", "-1/(t^2-1)");
    checkrem(1, "2*t/(t^2-1)", "-(t-1)*t*(t+1)^2", "1/(t+1)");
    checkrem(2, "(t^2+2)/(t-1)", "-(t-1)*(t+1)^2*(t+2)", "-t^2/(t^2-1)");
    checkrem(3, "-(t+2)*(t^3-2*t-3)/(t^2-1)", "-(t+2)*(t+3)*(t^2-1)", "(t^2+t-1)/(t-1)");

    // minimality: first three aligned remainders independent (rank check is
    // implicit in the search loop reaching order 3)
    REQUIRE(T.have_certificate);
}
