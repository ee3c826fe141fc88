// Command-line front end for the oretel shared library.  All computation goes
// through the C API in oretel.h; this file only parses arguments, loads files
// and formats output.

#include <oretel.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(1);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Out {
    char* s = nullptr;
    ~Out() { oretel_free(s); }
    json parsed() const { return json::parse(s ? s : "{}"); }
};

int finish(oretel_status rc, const Out& out, bool as_json, const std::string& human) {
    if (rc == ORETEL_ERROR) {
        std::cerr << "error: " << oretel_last_error() << "\n";
        return 1;
    }
    if (as_json)
        std::cout << (out.s ? out.s : "{}") << "\n";
    else
        std::cout << human << "\n";
    return rc == ORETEL_NEGATIVE ? 2 : 0;
}

std::string frame_summary(const json& j) {
    std::ostringstream os;
    os << "basis rows over (1, S, ..., S^(r-1)):\n";
    for (auto& row : j["T"]) {
        os << "  (";
        for (size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << row[i].get<std::string>();
        os << ")\n";
    }
    if (j.contains("e")) os << "S W = (1/e) M W with e = " << j["e"].get<std::string>() << "\n";
    if (j.contains("tau")) os << "tau = " << j["tau"].dump() << "\n";
    if (j.contains("betas")) os << "beta minimal polynomials: " << j["betas"].dump() << "\n";
    return os.str();
}

std::string decomposition_summary(const json& j) {
    std::ostringstream os;
    os << "f = Delta(g) + (1/d) P W + (1/a) Q V\n";
    os << "  d = " << j["d"].get<std::string>() << "\n  P = (";
    for (size_t i = 0; i < j["P"].size(); ++i) os << (i ? ", " : "") << j["P"][i].get<std::string>();
    os << ")\n  a = " << j["a"].get<std::string>() << "\n  Q = (";
    for (size_t i = 0; i < j["Q"].size(); ++i) os << (i ? ", " : "") << j["Q"][i].get<std::string>();
    os << ")\n  summable: " << (j["summable"].get<bool>() ? "yes" : "no");
    if (j.contains("verified"))
        os << "\n  pointwise verification: " << (j["verified"].get<bool>() ? "passed" : "FAILED");
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oretel: reduction-based creative telescoping for P-recursive sequences"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");

    std::string op_path, points_path, elem_path, ut_path, init_path;
    long beta_extra = 0, max_order = 12, from = 1, to = 20;
    bool at_infinity = false, no_certificate = false;

    auto* ib = app.add_subcommand("ibasis", "local integral basis at points or at infinity");
    ib->add_option("--op", op_path, "operator JSON file")->required();
    ib->add_option("--points", points_path, "points JSON file");
    ib->add_flag("--at-infinity,--at", at_infinity, "basis at infinity");

    auto* su = app.add_subcommand("suitable", "suitable basis at the default betas");
    su->add_option("--op", op_path)->required();
    su->add_option("--beta-extra", beta_extra, "shift every beta right by this amount");

    auto* de = app.add_subcommand("decompose", "additive decomposition of an element");
    de->add_option("--op", op_path)->required();
    de->add_option("--elem", elem_path, "element JSON file")->required();

    auto* sm = app.add_subcommand("summable", "summability decision with certificate or witness");
    sm->add_option("--op", op_path)->required();
    sm->add_option("--elem", elem_path)->required();

    auto* te = app.add_subcommand("telescope", "minimal telescoper over C(t)");
    te->add_option("--L", op_path, "operator in S_x over QQ(t)")->required();
    te->add_option("--st", ut_path, "u_t operator JSON (S_t = u_t on the cyclic vector)")->required();
    te->add_option("--elem", elem_path)->required();
    te->add_option("--max-order", max_order);
    te->add_flag("--no-certificate", no_certificate);

    auto* ev = app.add_subcommand("eval", "exact sequence table from initial values");
    ev->add_option("--op", op_path)->required();
    ev->add_option("--init", init_path, "JSON array of r initial values")->required();
    ev->add_option("--from", from);
    ev->add_option("--to", to);

    auto* ve = app.add_subcommand("verify", "decompose and verify pointwise");
    ve->add_option("--op", op_path)->required();
    ve->add_option("--elem", elem_path)->required();
    ve->add_option("--from", from);
    ve->add_option("--to", to);

    CLI11_PARSE(app, argc, argv);

    Out out;
    if (ib->parsed()) {
        std::string op = slurp(op_path);
        oretel_status rc;
        if (at_infinity)
            rc = oretel_ibasis_infinity(op.c_str(), &out.s);
        else {
            if (points_path.empty()) {
                std::cerr << "ibasis needs --points or --at-infinity\n";
                return 1;
            }
            std::string pts = slurp(points_path);
            rc = oretel_ibasis(op.c_str(), pts.c_str(), &out.s);
        }
        return finish(rc, out, as_json, rc == ORETEL_OK ? frame_summary(out.parsed()) : "");
    }
    if (su->parsed()) {
        std::string op = slurp(op_path);
        oretel_status rc = oretel_suitable(op.c_str(), beta_extra, &out.s);
        return finish(rc, out, as_json, rc == ORETEL_OK ? frame_summary(out.parsed()) : "");
    }
    if (de->parsed()) {
        std::string op = slurp(op_path), el = slurp(elem_path);
        oretel_status rc = oretel_decompose(op.c_str(), el.c_str(), &out.s);
        return finish(rc, out, as_json, rc == ORETEL_OK ? decomposition_summary(out.parsed()) : "");
    }
    if (sm->parsed()) {
        std::string op = slurp(op_path), el = slurp(elem_path);
        oretel_status rc = oretel_summable(op.c_str(), el.c_str(), &out.s);
        std::string human;
        if (rc != ORETEL_ERROR) {
            json j = out.parsed();
            if (j["summable"].get<bool>())
                human = "summable; certificate coordinates: " + j["certificate"]["coords"].dump();
            else
                human = "not summable; witness: " + j["witness"].dump();
        }
        return finish(rc, out, as_json, human);
    }
    if (te->parsed()) {
        std::string op = slurp(op_path), ut = slurp(ut_path), el = slurp(elem_path);
        oretel_status rc = oretel_telescope(op.c_str(), ut.c_str(), el.c_str(), max_order,
                                            no_certificate ? 0 : 1, &out.s);
        std::string human;
        if (rc == ORETEL_OK) {
            json j = out.parsed();
            std::ostringstream os;
            os << "telescoper (coefficients of S_t^0, S_t^1, ...):\n";
            for (auto& c : j["telescoper"]) os << "  " << c.get<std::string>() << "\n";
            if (j.contains("certificate")) os << "certificate attached";
            human = os.str();
        } else if (rc == ORETEL_NEGATIVE) {
            human = "no telescoper up to the requested order";
        }
        return finish(rc, out, as_json, human);
    }
    if (ev->parsed()) {
        std::string op = slurp(op_path), init = slurp(init_path);
        oretel_status rc = oretel_eval(op.c_str(), init.c_str(), from, to, &out.s);
        std::string human;
        if (rc == ORETEL_OK) {
            json j = out.parsed();
            std::ostringstream os;
            long x0 = j["x0"].get<long>();
            for (size_t i = 0; i < j["values"].size(); ++i)
                os << "u(" << (x0 + static_cast<long>(i)) << ") = "
                   << j["values"][i].get<std::string>() << "\n";
            human = os.str();
        }
        return finish(rc, out, as_json, human);
    }
    if (ve->parsed()) {
        std::string op = slurp(op_path), el = slurp(elem_path);
        oretel_status rc = oretel_verify_decomposition(op.c_str(), el.c_str(), from, to, &out.s);
        return finish(rc, out, as_json, rc != ORETEL_ERROR ? decomposition_summary(out.parsed()) : "");
    }
    return 1;
}
