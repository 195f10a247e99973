#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "CLI11.hpp"
#include "json.hpp"
#include "suite.hpp"
#include "uqeps/coadjoint.hpp"
#include "uqeps/colorcat.hpp"
#include "uqeps/dilog.hpp"
#include "uqeps/fusion.hpp"
#include "uqeps/qalgebra.hpp"

using namespace uqeps;
using json = nlohmann::ordered_json;

namespace {

struct Precondition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int n = 3;
    int d = 1;
    double tol_rep = 1e-12;
    double tol_char = 1e-9;
    double tol_6j = 1e-6;
    double tol_dilog = 1e-8;
    std::uint64_t seed = acceptance::kDefaultSeed;
    std::string output;

    ScalarContext ctx() const { return {n, d, Mode::Cyclotomic}; }

    void validate() const {
        if (n < 3 || n % 2 == 0) throw Precondition("n must be odd and >= 3");
        if (std::gcd(n, d) != 1) throw Precondition("gcd(d, n) must be 1");
        for (double t : {tol_rep, tol_char, tol_6j, tol_dilog})
            if (!(t > 0)) throw Precondition("tolerances must be positive");
    }
};

cplx parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw Precondition("empty complex number");
    auto num = [&](const std::string& t) {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw Precondition("cannot parse complex number '" + s + "'");
        }
        if (used != t.size()) throw Precondition("cannot parse complex number '" + s + "'");
        return v;
    };
    if (s.back() != 'i') return num(s);
    const std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    return {re.empty() ? 0.0 : num(re), num(im)};
}

std::vector<cplx> parse_complex_list(const std::string& s, size_t count) {
    std::vector<cplx> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',') {
            out.push_back(parse_complex(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (out.size() != count) throw Precondition("expected " + std::to_string(count) + " comma separated values in '" + s + "'");
    return out;
}

std::array<int, 3> parse_int3(const std::string& s) {
    std::array<int, 3> out{};
    const auto v = parse_complex_list(s, 3);
    for (int j = 0; j < 3; ++j) {
        if (v[j].imag() != 0 || v[j].real() != std::round(v[j].real())) throw Precondition("expected integers in '" + s + "'");
        out[j] = static_cast<int>(v[j].real());
    }
    return out;
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json mj(const Mat& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(cj(m(i, j)));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

json charj(const CentralCharacter& c) { return {{"x", cj(c.x)}, {"y", cj(c.y)}, {"z", cj(c.z)}, {"c", cj(c.c)}}; }
json charj(const Z0Character& c) { return {{"x", cj(c.x)}, {"y", cj(c.y)}, {"z", cj(c.z)}}; }

json check(double residual, double tol) { return {{"residual", residual}, {"tolerance", tol}, {"pass", residual <= tol}}; }

// A regular cyclic module V(lambda, a, b): explicit "lambda,a,b" or drawn from the seeded generator.
ModuleRep module_arg(const std::string& s, std::mt19937_64& g, const ScalarContext& ctx) {
    GenericSpec spec;
    if (s.empty()) {
        std::uniform_real_distribution<double> r(0.5, 1.5), ph(0.0, 2 * M_PI);
        spec = {std::polar(r(g), ph(g)), std::polar(r(g), ph(g)), std::polar(r(g), ph(g))};
    } else {
        const auto v = parse_complex_list(s, 3);
        spec = {v[0], v[1], v[2]};
    }
    return build_module(spec, ctx);
}

json spec_json(const ModuleRep& m) {
    const auto& s = std::get<GenericSpec>(m.spec);
    return {{"lambda", cj(s.lambda)}, {"a", cj(s.a)}, {"b", cj(s.b)}};
}

bool all_pass(const json& j) {
    if (j.is_object()) {
        if (j.contains("pass") && j["pass"].is_boolean() && !j["pass"].get<bool>()) return false;
        for (const auto& [k, v] : j.items())
            if (!all_pass(v)) return false;
    } else if (j.is_array()) {
        for (const auto& v : j)
            if (!all_pass(v)) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Computations with U_eps(sl2) at odd roots of unity; every command prints JSON."};
    app.require_subcommand(1);
    RunConfig cfg;
    bool json_flag = false;
    app.add_option("--n", cfg.n, "order of the root of unity (odd, >= 3)");
    app.add_option("--d", cfg.d, "eps = exp(2 pi i d / n)");
    app.add_option("--seed", cfg.seed, "seed for every random sample");
    app.add_option("--tol-rep", cfg.tol_rep, "module relations");
    app.add_option("--tol-char", cfg.tol_char, "central characters and flows");
    app.add_option("--tol-6j", cfg.tol_6j, "fusion and 6j checks");
    app.add_option("--tol-dilog", cfg.tol_dilog, "matrix dilogarithm checks");
    app.add_flag("--json", json_flag, "JSON output (always on)");
    app.add_option("--output", cfg.output, "write JSON here instead of stdout");
    app.fallthrough();

    auto* module = app.add_subcommand("module", "matrices, central character and class flags of a simple module");
    module->alias("cmd_module");
    int vr = -1;
    std::string sign = "+", lambda, a, b;
    module->add_option("--vr", vr, "highest weight module V_r");
    module->add_option("--sign", sign, "+ or -");
    module->add_option("--lambda", lambda);
    module->add_option("--a", a);
    module->add_option("--b", b);

    auto* center = app.add_subcommand("center-check", "center relation in PBW normal form");
    center->alias("cmd_center_check");
    center->add_option("--sign", sign, "+ or -");

    auto* fuse = app.add_subcommand("fuse", "tensor product, Casimir spectrum, K and the 6j operator");
    fuse->alias("cmd_fuse");
    std::string rho, mu, nu, kappa;
    bool triple = false;
    fuse->add_option("--rho", rho, "lambda,a,b (random if absent)");
    fuse->add_option("--mu", mu, "lambda,a,b (random if absent)");
    fuse->add_option("--nu", nu, "lambda,a,b; implies --triple");
    fuse->add_flag("--triple", triple, "also compute R(rho, mu, nu)");

    auto* pent = app.add_subcommand("pentagon", "pentagon (fusion) or five-term (dilog) identity");
    pent->alias("cmd_pentagon");
    std::string mode = "dilog", xs = "0.3+0.4i", ys = "-0.2+0.7i";
    int orient = 1;
    pent->add_option("--mode", mode)->check(CLI::IsMember({"fusion", "dilog"}));
    pent->add_option("--x", xs);
    pent->add_option("--y", ys);
    pent->add_option("--orient", orient)->check(CLI::IsMember({-1, 1}));
    pent->add_option("--kappa", kappa, "lambda,a,b (random if absent)");
    pent->add_option("--rho", rho);
    pent->add_option("--mu", mu);
    pent->add_option("--nu", nu);

    auto* dil = app.add_subcommand("dilog", "n-th root moduli and the tensor of one tetrahedron");
    dil->alias("cmd_dilog");
    std::string w0s = "0.5+0.5i", fs = "0,0,0", cs = "0,0,1";
    dil->add_option("--w0", w0s);
    dil->add_option("--f", fs, "flattening f0,f1,f2");
    dil->add_option("--c", cs, "charge c0,c1,c2");
    dil->add_option("--orient", orient)->check(CLI::IsMember({-1, 1}));

    auto* flow = app.add_subcommand("flow", "flow of a Z_0 generator on Spec(Z_0)");
    flow->alias("cmd_flow");
    std::string gen = "e", ts = "0.5", chars;
    flow->add_option("--gen", gen)->check(CLI::IsMember({"e", "f", "z"}));
    flow->add_option("--t", ts);
    flow->add_option("--char", chars, "x,y,z")->required();

    auto* six = app.add_subcommand("sixj-color", "theta values and the normalized color 6j symbol");
    six->alias("cmd_sixj_color");
    std::vector<int> labels;
    six->add_option("labels", labels, "a b f e d c")->expected(6)->required();

    auto* acc = app.add_subcommand("acceptance", "run the acceptance suite");
    acc->alias("cmd_acceptance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    json out;
    try {
        cfg.validate();
        const ScalarContext ctx = cfg.ctx();
        std::mt19937_64 g(cfg.seed);
        const int sg = sign == "+" ? 1 : sign == "-" ? -1 : 0;
        out["n"] = cfg.n;
        out["d"] = cfg.d;

        if (*module) {
            if (sg == 0) throw Precondition("--sign must be + or -");
            ModuleSpec spec;
            if (vr >= 0) {
                spec = HighestWeightSpec{vr, sg};
            } else {
                if (lambda.empty() || b.empty()) throw Precondition("give --vr or --lambda, --a, --b");
                spec = GenericSpec{parse_complex(lambda), a.empty() ? cplx{} : parse_complex(a), parse_complex(b)};
            }
            const ModuleRep m = build_module(spec, ctx);
            const CentralCharacter closed = character_closed_form(spec, ctx);
            const CentralCharacter ext = character_from_action(m, 1e-6);
            const double dc = std::max({std::abs(closed.x - ext.x), std::abs(closed.y - ext.y), std::abs(closed.z - ext.z),
                                        std::abs(closed.c - ext.c) / std::max(1.0, std::abs(closed.c))});
            const ClassFlags f = classify(closed, ctx);
            out["dim"] = m.dim;
            out["matrices"] = {{"E", mj(m.E)}, {"F", mj(m.F)}, {"K", mj(m.K)}};
            out["character"] = charj(closed);
            out["flags"] = {{"diagonal", f.diagonal},     {"triangular", f.triangular},
                            {"regular", f.regular},       {"singular", f.singular},
                            {"regular_semisimple", f.regular_semisimple}, {"cyclic", f.cyclic}};
            out["relations"] = check(relation_residual(m), cfg.tol_rep);
            out["character_closed_vs_action"] = check(dc, cfg.tol_char);
        } else if (*center) {
            if (sg == 0) throw Precondition("--sign must be + or -");
            const auto r = center_relation_residual(CycloField::get(cfg.n, cfg.d), sg);
            out["sign"] = sign;
            out["residual_terms"] = r.terms().size();
            out["ok"] = r.is_zero();
            out["pass"] = r.is_zero();
        } else if (*fuse) {
            const ModuleRep r = module_arg(rho, g, ctx), m = module_arg(mu, g, ctx);
            const TensorRep t = tensor_rep(r, m);
            const Mat om = act(t.product, casimir<Cyclo>(CycloField::get(cfg.n, cfg.d)));
            Eigen::ComplexEigenSolver<Mat> es(om, false);
            std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + om.rows()), want;
            std::sort(ev.begin(), ev.end(), complex_less);
            json fiber = json::array(), spectrum = json::array();
            double scale = 1;
            for (const auto& c : tau_fiber(t.h, ctx)) {
                fiber.push_back(cj(c.c));
                scale = std::max(scale, std::abs(c.c));
                for (int i = 0; i < cfg.n; ++i) want.push_back(c.c);
            }
            for (cplx e : ev) spectrum.push_back(cj(e));
            const EvaluationMap e = evaluation_map(r, m);
            out["rho"] = spec_json(r);
            out["mu"] = spec_json(m);
            out["h"] = charj(t.h);
            out["casimir_spectrum"] = spectrum;
            out["fiber_casimir"] = fiber;
            out["spectrum_vs_fiber"] = check(multiset_distance(ev, want) / scale, cfg.tol_6j);
            out["K"] = mj(e.K);
            out["twistcop"] = check(twistcop_residual(e, r, m), cfg.tol_6j);
            out["det_K"] = check(std::abs(e.K.determinant() - 1.0), cfg.tol_6j);
            if (triple || !nu.empty()) {
                const ModuleRep v = module_arg(nu, g, ctx);
                const SixJOperator s = sixj_operator(r, m, v, cfg.tol_6j);
                out["nu"] = spec_json(v);
                out["R"] = mj(s.R);
                out["factor_identity"] = check(s.factor_residual, cfg.tol_6j);
                out["modpent"] = check(s.modpent_residual, cfg.tol_6j);
            }
        } else if (*pent) {
            out["mode"] = mode;
            if (mode == "dilog") {
                const TransitPattern p = build_23_transit(parse_complex(xs), parse_complex(ys), cfg.n, orient);
                const TransitResidual tr = transit_residual(p);
                const FiveTerm f = five_term(p);
                json tet = json::array();
                for (const auto& t : p.tetra)
                    tet.push_back({{"w0", cj(t.w0)}, {"b", t.b}, {"f", t.f}, {"c", t.c}});
                out["x"] = cj(p.x);
                out["y"] = cj(p.y);
                out["tetrahedra"] = tet;
                out["transit"] = {{"w_prime", check(tr.w_prime, 1e-10)},
                                  {"charges_equal", tr.charges_equal},
                                  {"certified_minimal", p.certified_minimal}};
                out["residual"] = f.residual;
                out["tolerance"] = cfg.tol_dilog;
                out["pass"] = f.residual <= cfg.tol_dilog && tr.charges_equal && tr.w_prime <= 1e-10;
                out["up_to_root_of_unity"] = {{"exponent", f.phase}, {"residual", f.phase_residual}};
            } else {
                const ModuleRep k = module_arg(kappa, g, ctx), r = module_arg(rho, g, ctx), m = module_arg(mu, g, ctx),
                                v = module_arg(nu, g, ctx);
                const double res = pentagon_check(k, r, m, v);
                out["kappa"] = spec_json(k);
                out["rho"] = spec_json(r);
                out["mu"] = spec_json(m);
                out["nu"] = spec_json(v);
                out["residual"] = res;
                out["tolerance"] = cfg.tol_6j;
                out["pass"] = res <= cfg.tol_6j;
            }
        } else if (*dil) {
            QHTetra t;
            t.b = orient;
            t.w0 = parse_complex(w0s);
            t.f = parse_int3(fs);
            t.c = parse_int3(cs);
            const RootModuli r = root_moduli(t, cfg.n);
            const FaceTensor ft = Rn_tetra(t, cfg.n);
            json tensor = json::array();
            for (cplx z : ft.a) tensor.push_back(cj(z));
            const auto w = cross_ratio_moduli(t.w0);
            out["moduli"] = {cj(w[0]), cj(w[1]), cj(w[2])};
            out["root_moduli"] = {cj(r.w[0]), cj(r.w[1]), cj(r.w[2])};
            out["exponents"] = r.exponent;
            double dev = 0;
            for (int j = 0; j < 3; ++j)
                dev = std::max(dev, std::abs(std::pow(r.w[j], cfg.n) - w[j] * std::polar(1.0, M_PI * r.exponent[j])) /
                                        std::abs(w[j]));
            out["root_check"] = check(dev, cfg.tol_dilog);
            out["tensor"] = {{"shape", {cfg.n, cfg.n, cfg.n, cfg.n}}, {"index", "faces delta_0 .. delta_3, row-major"},
                             {"data", tensor}};
        } else if (*flow) {
            const auto v = parse_complex_list(chars, 3);
            const Z0Character start{v[0], v[1], v[2]};
            const Gen a = gen == "e" ? Gen::e : gen == "f" ? Gen::f : Gen::z;
            const FlowResult fr = flow_character(a, parse_complex(ts), start);
            out["gen"] = gen;
            out["t"] = cj(parse_complex(ts));
            out["start"] = charj(start);
            out["end"] = charj(fr.end);
            out["steps"] = fr.steps;
            out["invariant_drift"] = check(fr.invariant_drift, cfg.tol_char);
        } else if (*six) {
            const int A = labels[0], B = labels[1], F = labels[2], E = labels[3], D = labels[4], C = labels[5];
            out["labels"] = labels;
            out["theta"] = {{"abf", cj(theta(A, B, F, ctx))},
                            {"def", cj(theta(D, E, F, ctx))},
                            {"acd", cj(theta(A, C, D, ctx))},
                            {"bce", cj(theta(B, C, E, ctx))}};
            out["normalized_6j"] = cj(sixj_normalized(A, B, F, E, D, C, ctx));
        } else if (*acc) {
            json crit = json::array();
            int passed = 0;
            for (const auto& c : acceptance::run_suite(cfg.seed)) {
                crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"summary", c.summary}});
                passed += c.pass;
            }
            out["seed"] = cfg.seed;
            out["criteria"] = crit;
            out["passed"] = passed;
            out["total"] = crit.size();
        }
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    const std::string text = out.dump() + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << json{{"error", "cannot write " + cfg.output}}.dump() << "\n";
            return 2;
        }
        f << text;
    }
    return all_pass(out) ? 0 : 1;
}
