#include "oretel.h"

#include <oretel/io.hpp>
#include <oretel/ibinfty.hpp>
#include <oretel/telescope.hpp>
#include <oretel/seqeval.hpp>

#include <cstring>

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template<class F>
oretel_status guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ORETEL_ERROR;
    } catch (...) {
        g_last_error = "unknown error";
        return ORETEL_ERROR;
    }
}

bool is_qt(const oretel::json& j) { return oretel::field_tag_of(j) == "QQ(t)"; }

oretel::json parse(const char* s) {
    oretel::check(s != nullptr, "null JSON input");
    return oretel::json::parse(s);
}

} // namespace

extern "C" {

const char* oretel_version(void) { return "oretel 1.0.0"; }

const char* oretel_last_error(void) { return g_last_error.c_str(); }

void oretel_free(char* s) { std::free(s); }

oretel_status oretel_ibasis(const char* op_json, const char* points_json, char** out_json) {
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json), jpts = parse(points_json);
        auto run = [&](auto tag) -> json {
            using K = decltype(tag);
            auto ctx = op_from_json<K>(jop);
            auto pts = points_from_json<K>(*ctx, jpts);
            auto frame = local_integral_basis_at<K>(ctx, pts);
            return frame_to_json(*frame);
        };
        json out = is_qt(jop) ? run(QT{}) : run(QQ{});
        *out_json = dup_string(out.dump(2));
        return ORETEL_OK;
    });
}

oretel_status oretel_ibasis_infinity(const char* op_json, char** out_json) {
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json);
        auto run = [&](auto tag) -> json {
            using K = decltype(tag);
            auto ctx = op_from_json<K>(jop);
            auto V = integral_basis_at_infinity<K>(ctx);
            json out = frame_to_json(*V.frame);
            out["tau"] = V.tau;
            return out;
        };
        json out = is_qt(jop) ? run(QT{}) : run(QQ{});
        *out_json = dup_string(out.dump(2));
        return ORETEL_OK;
    });
}

oretel_status oretel_suitable(const char* op_json, long beta_extra, char** out_json) {
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json);
        auto run = [&](auto tag) -> json {
            using K = decltype(tag);
            auto ctx = op_from_json<K>(jop);
            auto sb = suitable_basis<K>(ctx, beta_extra);
            json out = frame_to_json(*sb.frame);
            json betas = json::array();
            for (auto& b : sb.beta_minpolys()) betas.push_back(poly_to_json(b));
            out["betas"] = betas;
            return out;
        };
        json out = is_qt(jop) ? run(QT{}) : run(QQ{});
        *out_json = dup_string(out.dump(2));
        return ORETEL_OK;
    });
}

oretel_status oretel_decompose(const char* op_json, const char* elem_json, char** out_json) {
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json), jel = parse(elem_json);
        auto run = [&](auto tag) -> json {
            using K = decltype(tag);
            auto ctx = op_from_json<K>(jop);
            auto D = make_pipeline<K>(ctx);
            auto f = elem_from_json<K>(ctx, jel);
            auto dec = additive_decompose(f, D);
            return decomposition_to_json(dec, D);
        };
        json out = is_qt(jop) ? run(QT{}) : run(QQ{});
        *out_json = dup_string(out.dump(2));
        return ORETEL_OK;
    });
}

oretel_status oretel_summable(const char* op_json, const char* elem_json, char** out_json) {
    oretel_status verdict = ORETEL_ERROR;
    oretel_status rc = guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json), jel = parse(elem_json);
        auto run = [&](auto tag) -> json {
            using K = decltype(tag);
            auto ctx = op_from_json<K>(jop);
            auto D = make_pipeline<K>(ctx);
            auto f = elem_from_json<K>(ctx, jel);
            auto v = is_summable(f, D);
            json out;
            out["summable"] = v.summable;
            if (v.summable) {
                out["certificate"] = elem_to_json(v.certificate);
            } else {
                json P = json::array(), Q = json::array();
                for (auto& p : v.witness.P) P.push_back(poly_to_json(p));
                for (auto& q : v.witness.Q) Q.push_back(ratfn_to_json(q));
                out["witness"] = {{"d", poly_to_json(v.witness.d)}, {"P", P},
                                  {"a", poly_to_json(v.witness.a)}, {"Q", Q}};
            }
            verdict = v.summable ? ORETEL_OK : ORETEL_NEGATIVE;
            return out;
        };
        json out = is_qt(jop) ? run(QT{}) : run(QQ{});
        *out_json = dup_string(out.dump(2));
        return verdict;
    });
    return rc;
}

oretel_status oretel_telescope(const char* op_json, const char* ut_json, const char* elem_json,
                               long max_order, int want_certificate, char** out_json) {
    oretel_status verdict = ORETEL_ERROR;
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json), jut = parse(ut_json), jel = parse(elem_json);
        check(is_qt(jop), "telescoping requires operators over QQ(t)");
        auto ctx = op_from_json<QT>(jop);
        auto D = make_pipeline<QT>(ctx);
        auto B = make_bivariate(std::move(D), orepoly_from_json<QT>(jut));
        auto f = elem_from_json<QT>(ctx, jel);
        auto T = telescoper(f, B, max_order, want_certificate != 0);
        json out;
        out["found"] = T.found;
        if (T.found) {
            json coeffs = json::array();
            for (auto& c : T.coeffs) coeffs.push_back(qt_to_string(c));
            out["telescoper"] = coeffs;
            if (T.have_certificate) out["certificate"] = elem_to_json(T.certificate);
        }
        verdict = T.found ? ORETEL_OK : ORETEL_NEGATIVE;
        *out_json = dup_string(out.dump(2));
        return verdict;
    });
}

oretel_status oretel_eval(const char* op_json, const char* init_json, long from, long to,
                          char** out_json) {
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json), jinit = parse(init_json);
        check(!is_qt(jop), "sequence evaluation runs over QQ; specialize t first");
        auto ctx = op_from_json<QQ>(jop);
        std::vector<Rat> init;
        for (auto& v : jinit) init.push_back(parse_q(v.get<std::string>()));
        SequenceTable t = eval_sequence(ctx->ell, init, from, to);
        json out;
        out["x0"] = t.x0;
        json vals = json::array();
        for (auto& v : t.v) vals.push_back(q_to_string(v));
        out["values"] = vals;
        *out_json = dup_string(out.dump(2));
        return ORETEL_OK;
    });
}

oretel_status oretel_verify_decomposition(const char* op_json, const char* elem_json,
                                          long from, long to, char** out_json) {
    oretel_status verdict = ORETEL_ERROR;
    return guarded([&]() -> oretel_status {
        using namespace oretel;
        json jop = parse(op_json), jel = parse(elem_json);
        check(!is_qt(jop), "pointwise verification runs over QQ");
        auto ctx = op_from_json<QQ>(jop);
        auto D = make_pipeline<QQ>(ctx);
        auto f = elem_from_json<QQ>(ctx, jel);
        auto dec = additive_decompose(f, D);
        ModElem<QQ> h = remainder_value(dec, D);
        auto rep = verify_decomposition_seq(*ctx, f.standard_coords(), dec.g.standard_coords(),
                                            h.standard_coords(), from, to);
        json out = decomposition_to_json(dec, D);
        out["verified"] = rep.ok;
        out["violations"] = rep.failures;
        verdict = rep.ok ? ORETEL_OK : ORETEL_NEGATIVE;
        *out_json = dup_string(out.dump(2));
        return verdict;
    });
}

} // extern "C"
