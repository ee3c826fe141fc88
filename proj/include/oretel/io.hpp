#ifndef ORETEL_IO_HPP
#define ORETEL_IO_HPP

#include "orealg.hpp"
#include "finite_bases.hpp"
#include "decomp.hpp"
#include "textio.hpp"
#include <json.hpp>

namespace oretel {

using json = nlohmann::json;

template<class K>
json poly_to_json(const Poly<K>& p) { return poly_to_string_k<K>(p, "x"); }

// polynomials accept either the text grammar or an array of coefficient strings
template<class K>
Poly<K> poly_from_json(const json& j) {
    if (j.is_string()) return parse_poly<K>(j.get<std::string>());
    check(j.is_array(), "polynomial must be a string or an array of coefficient strings");
    Poly<K> p;
    for (auto& c : j) p.c.push_back(parse_coeff<K>(c.get<std::string>()));
    p.trim();
    return p;
}

template<class K>
json ratfn_to_json(const RatFn<K>& f) { return ratfn_to_string(f); }

template<class K>
RatFn<K> ratfn_from_json(const json& j) {
    check(j.is_string(), "rational function must be a string");
    return parse_ratfn<K>(j.get<std::string>());
}

inline std::string field_tag_of(const json& j) {
    if (j.contains("field")) return j["field"].get<std::string>();
    return "QQ";
}

template<class K>
json op_to_json(const AnnCtx<K>& ctx) {
    json j;
    j["field"] = field_name<K>::value;
    j["order"] = ctx.r;
    json coeffs = json::array();
    for (auto& l : ctx.ell) coeffs.push_back(poly_to_json(l));
    j["coeffs"] = coeffs;
    return j;
}

template<class K>
AnnCtxPtr<K> op_from_json(const json& j) {
    check(j.contains("coeffs"), "operator JSON needs a 'coeffs' array");
    std::vector<Poly<K>> ell;
    for (auto& c : j["coeffs"]) ell.push_back(poly_from_json<K>(c));
    auto ctx = std::make_shared<AnnCtx<K>>(std::move(ell));
    if (j.contains("order"))
        check(ctx->r == j["order"].get<long>(), "declared order disagrees with the coefficient list");
    return ctx;
}

template<class K>
json orepoly_to_json(const OreOp<K>& op) {
    json j;
    j["field"] = field_name<K>::value;
    j["order"] = op.order();
    json coeffs = json::array();
    for (auto& c : op.c) coeffs.push_back(ratfn_to_json(c));
    j["coeffs"] = coeffs;
    return j;
}

template<class K>
OreOp<K> orepoly_from_json(const json& j) {
    check(j.contains("coeffs"), "operator JSON needs a 'coeffs' array");
    std::vector<RatFn<K>> c;
    for (auto& e : j["coeffs"]) c.push_back(ratfn_from_json<K>(e));
    return OreOp<K>(std::move(c));
}

template<class K>
json frame_to_json(const Frame<K>& fr) {
    json T = json::array();
    for (size_t i = 0; i < fr.dim(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < fr.dim(); ++j) row.push_back(ratfn_to_json(fr.T(i, j)));
        T.push_back(row);
    }
    json j;
    j["T"] = T;
    j["e"] = poly_to_json(fr.e);
    json M = json::array(), N = json::array();
    for (size_t i = 0; i < fr.dim(); ++i) {
        json mr = json::array(), nr = json::array();
        for (size_t jj = 0; jj < fr.dim(); ++jj) {
            mr.push_back(poly_to_json(fr.M(i, jj)));
            nr.push_back(poly_to_json(fr.N(i, jj)));
        }
        M.push_back(mr);
        N.push_back(nr);
    }
    j["M"] = M;
    j["ftil"] = poly_to_json(fr.ftil);
    j["N"] = N;
    return j;
}

template<class K>
FramePtr<K> frame_from_json(AnnCtxPtr<K> ctx, const json& j, const std::string& name = "W") {
    check(j.contains("T"), "frame JSON needs a 'T' matrix");
    const auto& T = j["T"];
    size_t r = T.size();
    check(r == static_cast<size_t>(ctx->r), "frame dimension disagrees with the operator order");
    Mat<RatFn<K>> m(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t jj = 0; jj < r; ++jj) m(i, jj) = ratfn_from_json<K>(T[i][jj]);
    return make_frame(ctx, std::move(m), name);
}

template<class K>
json elem_to_json(const ModElem<K>& f) {
    json j;
    json coords = json::array();
    for (auto& c : f.coord) coords.push_back(ratfn_to_json(c));
    j["coords"] = coords;
    j["frame"] = f.frame->name.empty() ? "standard" : f.frame->name;
    return j;
}

// elements are read in the standard frame unless a frame object is embedded
template<class K>
ModElem<K> elem_from_json(AnnCtxPtr<K> ctx, const json& j) {
    json coords = j.is_object() && j.contains("coords") ? j["coords"] : j;
    check(coords.is_array(), "element JSON needs a 'coords' array");
    std::vector<RatFn<K>> c;
    for (auto& e : coords) c.push_back(ratfn_from_json<K>(e));
    FramePtr<K> fr;
    if (j.is_object() && j.contains("frame") && j["frame"].is_object())
        fr = frame_from_json<K>(ctx, j["frame"]);
    else
        fr = standard_frame(ctx);
    return ModElem<K>(fr, std::move(c));
}

// points: integers (rational points) or {"minpoly": ..., "offsets": [...]}
template<class K>
std::vector<OrbitPoints<K>> points_from_json(const AnnCtx<K>& ctx, const json& j) {
    std::vector<Poly<K>> minpolys;
    const json& arr = j.is_object() && j.contains("points") ? j["points"] : j;
    check(arr.is_array(), "points JSON must be an array");
    for (auto& e : arr) {
        if (e.is_number_integer()) {
            long v = e.get<long>();
            minpolys.push_back(Poly<K>::x() - Poly<K>(K(v)));
        } else if (e.is_object()) {
            Poly<K> mp = poly_from_json<K>(e["minpoly"]);
            if (e.contains("offsets"))
                for (auto& o : e["offsets"])
                    minpolys.push_back(shift_poly(mp, -o.get<long>()));
            else
                minpolys.push_back(mp);
        } else {
            throw oretel_error("unsupported point entry in JSON");
        }
    }
    return group_points(ctx, minpolys);
}

template<class K>
json decomposition_to_json(const AdditiveDecomposition<K>& dec, const DecompPipeline<K>& D) {
    json j;
    j["g"] = elem_to_json(dec.g);
    j["d"] = poly_to_json(dec.d);
    json P = json::array(), Q = json::array();
    for (auto& p : dec.P) P.push_back(poly_to_json(p));
    for (auto& q : dec.Q) Q.push_back(ratfn_to_json(q));
    j["P"] = P;
    j["a"] = poly_to_json(dec.a);
    j["Q"] = Q;
    j["mu"] = dec.mu;
    j["delta"] = dec.delta;
    j["deltap"] = dec.deltap;
    j["W"] = frame_to_json(*D.sb.frame);
    j["V"] = frame_to_json(*D.V);
    j["summable"] = dec.remainder_zero();
    return j;
}

} // namespace oretel

#endif
