#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <oretel/localval.hpp>
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

// L = x^2 (x+2) S - (x+1)^4, annihilates x^2 x!/(x+1)
AnnCtxPtr<Rat> example_ord1_ctx() {
    std::vector<Poly<Rat>> ell{
        parse_poly<Rat>("-(x+1)^4"),
        parse_poly<Rat>("x^2*(x+2)")};
    return std::make_shared<AnnCtx<Rat>>(std::move(ell));
}

} // namespace

TEST_CASE("orbit root offsets") {
    auto ctx = example2_ctx();
    auto offs = orbit_root_offsets(ctx->l0lr(), Poly<Rat>::x());
    CHECK(offs == std::vector<long>{-3, -2});
    auto ctx1 = example_ord1_ctx();
    auto offs1 = orbit_root_offsets(ctx1->l0lr(), Poly<Rat>::x());
    CHECK(offs1 == std::vector<long>{-2, -1, 0});
}

TEST_CASE("initial block is the identity") {
    auto ctx = example2_ctx();
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -6, 4, 20);
    for (size_t j = 0; j < 2; ++j)
        for (long i = 0; i < 2; ++i) {
            auto v = B.value(j, -3 + i).valuation();
            if (static_cast<long>(j) == i) {
                REQUIRE(v.has_value());
                CHECK(*v == 0);
                CHECK(B.value(j, -3 + i).coeff(0) == ExtElem<Rat>(1));
            } else {
                CHECK(!v.has_value());
            }
        }
}

TEST_CASE("solutions satisfy the recurrence within truncation") {
    auto ctx = example2_ctx();
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -8, 8, 24);
    std::vector<RatFn<Rat>> L;
    for (auto& l : ctx->ell) L.push_back(RatFn<Rat>(l));
    for (size_t j = 0; j < 2; ++j)
        for (long m = -8; m <= 6; ++m) {
            QSeries<Rat> res = apply_to_solution(L, B, j, m);
            CHECK(!res.valuation().has_value()); // zero within truncation
            CHECK(res.known >= 4);
        }
}

TEST_CASE("values from the suitable-basis example") {
    auto ctx = example2_ctx();
    auto U = standard_frame(ctx);
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -6, 4, 24);

    // val_{-2}(S) = -1 but val_{-2}((x+2) S) = 0
    ModElem<Rat> S(U, {RatFn<Rat>(0), RatFn<Rat>(1)});
    ModElem<Rat> xS(U, {RatFn<Rat>(0), RatFn<Rat>(parse_poly<Rat>("x+2"))});
    ModElem<Rat> one(U, {RatFn<Rat>(1), RatFn<Rat>(0)});
    auto vS = val_at(S, B, -2);
    CHECK(vS.finite);
    CHECK(vS.val == -1);
    auto vxS = val_at(xS, B, -2);
    CHECK(vxS.finite);
    CHECK(vxS.val == 0);
    auto v1 = val_at(one, B, -2);
    CHECK(v1.finite);
    CHECK(v1.val == 0);

    // val of 0 is flagged infinite
    auto v0 = val_at(zero_elem(U), B, -2);
    CHECK(!v0.finite);

    // S^{i-1} integral at and left of the leftmost root
    for (long m = -6; m <= -3; ++m) {
        CHECK(val_at(one, B, m).val >= 0);
        auto vv = val_at(S, B, m);
        CHECK((!vv.finite || vv.val >= 0));
    }
}

TEST_CASE("order-1 example: (x+1)x^-3 is integral at {-1, 0}") {
    auto ctx = example_ord1_ctx();
    auto U = standard_frame(ctx);
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -2, -5, 3, 24);
    ModElem<Rat> w(U, {parse_ratfn<Rat>("(x+1)/x^3")});
    ModElem<Rat> one(U, {RatFn<Rat>(1)});
    CHECK(val_at(w, B, -1).val == 0);
    CHECK(val_at(w, B, 0).val == 0);
    CHECK(val_at(one, B, 0).val == 3);
    CHECK(is_integral_at(w, B, {-1, 0}));
    ModElem<Rat> bad(U, {parse_ratfn<Rat>("(x+1)/x^4")});
    CHECK(!is_integral_at(bad, B, {-1, 0}));
}

TEST_CASE("lemma: integrality shifts with S") {
    auto ctx = example2_ctx();
    auto U = standard_frame(ctx);
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -8, 6, 30);
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 60; ++it) {
        Poly<Rat> n1, n2;
        for (int i = 0; i < 3; ++i) { n1.c.push_back(rat_of(c(rng))); n2.c.push_back(rat_of(c(rng))); }
        n1.trim(); n2.trim();
        ModElem<Rat> f(U, {RatFn<Rat>(n1), RatFn<Rat>(n2, parse_poly<Rat>("x+2"))});
        if (f.is_zero()) continue;
        for (long m : {-3L, -2L, -1L, 0L}) {
            auto vf = val_at(f, B, m);
            auto vsf = val_at(apply_S(f), B, m - 1);
            if (vf.finite && vsf.finite)
                CHECK((vf.val >= 0) == (vsf.val >= 0));
        }
    }
}

TEST_CASE("val is anchor independent") {
    auto ctx = example2_ctx();
    auto U = standard_frame(ctx);
    auto B1 = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -9, 6, 30);
    auto B2 = solution_basis<Rat>(ctx, Poly<Rat>::x(), -5, -9, 6, 30);
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 40; ++it) {
        Poly<Rat> n1, n2;
        for (int i = 0; i < 3; ++i) { n1.c.push_back(rat_of(c(rng))); n2.c.push_back(rat_of(c(rng))); }
        n1.trim(); n2.trim();
        ModElem<Rat> f(U, {RatFn<Rat>(n1, Poly<Rat>::x() + Poly<Rat>(2)), RatFn<Rat>(n2)});
        if (f.is_zero()) continue;
        for (long m : {-4L, -3L, -2L, -1L, 0L, 2L}) {
            auto v1 = val_at(f, B1, m);
            auto v2 = val_at(f, B2, m);
            CHECK(v1.finite == v2.finite);
            if (v1.finite) CHECK(v1.val == v2.val);
        }
    }
}

TEST_CASE("val scales with vanishing order of scalar") {
    auto ctx = example2_ctx();
    auto U = standard_frame(ctx);
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -6, 6, 30);
    ModElem<Rat> one(U, {RatFn<Rat>(1), RatFn<Rat>(0)});
    // a = (x+2): vanishes to order 1 at -2, regular elsewhere
    ModElem<Rat> f(U, {RatFn<Rat>(parse_poly<Rat>("x+2")), RatFn<Rat>(0)});
    CHECK(val_at(f, B, -2).val == val_at(one, B, -2).val + 1);
    CHECK(val_at(f, B, 0).val == val_at(one, B, 0).val);
}

TEST_CASE("delta matches pointwise differencing on solutions") {
    auto ctx = example2_ctx();
    auto U = standard_frame(ctx);
    auto B = solution_basis<Rat>(ctx, Poly<Rat>::x(), -3, -6, 6, 30);
    std::mt19937 rng(44);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int it = 0; it < 30; ++it) {
        Poly<Rat> n1, n2;
        for (int i = 0; i < 2; ++i) { n1.c.push_back(rat_of(c(rng))); n2.c.push_back(rat_of(c(rng))); }
        n1.trim(); n2.trim();
        ModElem<Rat> g(U, {RatFn<Rat>(n1), RatFn<Rat>(n2)});
        auto dg = delta(g);
        auto dg_std = dg.standard_coords();
        auto g_std = g.standard_coords();
        for (size_t j = 0; j < 2; ++j)
            for (long m : {0L, 1L, 2L, 3L}) {
                QSeries<Rat> lhs = apply_to_solution(dg_std, B, j, m);
                QSeries<Rat> rhs = qs_add(apply_to_solution(g_std, B, j, m + 1), qs_neg(apply_to_solution(g_std, B, j, m)));
                QSeries<Rat> diff = qs_add(lhs, qs_neg(rhs));
                CHECK(!diff.valuation().has_value());
            }
    }
}
