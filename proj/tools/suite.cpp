// The acceptance criteria as property checks over seeded random samples.
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "suite.hpp"

#include "uqeps/coadjoint.hpp"
#include "uqeps/colorcat.hpp"
#include "uqeps/dilog.hpp"
#include "uqeps/fusion.hpp"
#include "uqeps/qalgebra.hpp"

namespace uqeps::acceptance {

namespace {

struct Outcome {
    bool pass = false;
    std::string summary;
    std::string details;
};

std::mt19937_64 rng;

cplx rand_c(double lo = 0.5, double hi = 1.5) {
    std::uniform_real_distribution<double> r(lo, hi), ph(0.0, 2 * M_PI);
    return std::polar(r(rng), ph(rng));
}

ModuleRep rand_module(const ScalarContext& ctx) { return build_module(GenericSpec{rand_c(), rand_c(), rand_c()}, ctx); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

std::string cstr(cplx z) { return fmt("%.6g%+.6gi", z.real(), z.imag()); }

Outcome c1() {
    int total = 0, bad = 0;
    std::string first;
    for (int t = 0; t <= 3; ++t)
        for (int s = -3; s <= 3; ++s)
            for (int r = 0; r <= 3; ++r) {
                ++total;
                if (auto f = hopf_axiom_failure({t, s, r})) {
                    if (!bad) first = fmt("E^%d K^%d F^%d: ", t, s, r) + *f;
                    ++bad;
                }
            }
    return {bad == 0, fmt("%d monomials (t,r <= 3, |s| <= 3), %d failures", total, bad), first};
}

Outcome c2() {
    bool ok = true;
    std::string d;
    for (int n : {3, 5}) {
        const auto* f = CycloField::get(n, 1);
        for (int sg : {1, -1}) {
            const bool z = center_relation_residual(f, sg).is_zero();
            ok &= z;
            d += fmt("n=%d sign %+d: residual %s\n", n, sg, z ? "0" : "nonzero");
        }
    }
    return {ok, "center relation residual in PBW normal form, n = 3, 5, both signs: " + std::string(ok ? "zero" : "NONZERO"), d};
}

Outcome c3() {
    double rel = 0, chr = 0;
    for (int n : {3, 5, 7}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 200; ++k) {
            const GenericSpec s{rand_c(0.3, 1.7), rand_c(0.3, 1.7), rand_c(0.3, 1.7)};
            const ModuleRep v = build_module(s, ctx);
            rel = std::max(rel, relation_residual(v));
            const CentralCharacter a = character_closed_form(s, ctx), b = character_from_action(v, 1e-6);
            for (auto [p, q] : {std::pair{a.x, b.x}, {a.y, b.y}, {a.z, b.z}, {a.c, b.c}})
                chr = std::max(chr, std::abs(p - q) / std::max(1.0, std::abs(p)));
        }
    }
    return {rel <= 1e-12 && chr <= 1e-9, fmt("600 modules: relations %.2e, characters %.2e", rel, chr), ""};
}

Outcome c4() {
    using L = QLaurent;
    using PL = PBW<L>;
    const L::Context fq{};
    const PL om = casimir<L>(fq);
    const auto g = gamma_shift<L>(fq, -1, hc_project(om));
    const bool hc = g.size() == 2 && g.at(1) == L::qdiff_inv(fq, 2) && g.at(-1) == L::qdiff_inv(fq, 2);
    const std::vector<PL> deg0 = {PL::monomial(fq, {1, 0, 1}), PL::monomial(fq, {2, -1, 2}, L::qpow(fq, 1)),
                                  PL::K(fq, 2) + PL::monomial(fq, {1, 1, 1}), PL::monomial(fq, {2, 3, 2}), om};
    int bad = 0, total = 0;
    for (const auto& a : deg0)
        for (const auto& b : deg0) {
            ++total;
            bad += !(hc_project(a * b) == kpoly_mul(hc_project(a), hc_project(b)));
        }
    return {hc && bad == 0,
            fmt("gamma_{-1} pi(Omega) = (K+K^-1)/(q-q^-1)^2: %s; pi multiplicative on %d products: %d failures",
                hc ? "exact" : "NO", total, bad),
            ""};
}

Outcome c5() {
    std::string d;
    // Jacobi
    const ZPoly x = ZPoly::x(), y = ZPoly::y(), z = ZPoly::z();
    const ZPoly gens[] = {x, y, z, ZPoly::e(), ZPoly::f(), ZPoly::z(-1), x * y + z, x * x * ZPoly::z(-1)};
    int jac_bad = 0;
    for (const auto& a : gens)
        for (const auto& b : gens)
            for (const auto& c : gens)
                jac_bad += !(poisson(a, poisson(b, c)) + poisson(b, poisson(c, a)) + poisson(c, poisson(a, b))).is_zero();
    // Leibniz
    using P = PBW<Cyclo>;
    int leib_bad = 0;
    for (int n : {3, 5}) {
        const auto* f = CycloField::get(n, 1);
        std::vector<Mono> monos;
        for (int t = 0; t <= 2; ++t)
            for (int s = -1; s <= 1; ++s)
                for (int r = 0; r <= 2; ++r)
                    if (t + std::abs(s) + r <= 2) monos.push_back({t, s, r});
        for (Gen g : {Gen::e, Gen::f, Gen::z})
            for (const Mono& a : monos)
                for (const Mono& b : monos) {
                    const P u = P::monomial(f, a), v = P::monomial(f, b);
                    leib_bad += !(derive(g, u * v) == derive(g, u) * v + u * derive(g, v));
                }
    }
    // lift
    double lift = 0;
    int sym = 0, sym_ad = 0;
    for (int k = 0; k < 5; ++k) {
        const LiftResiduals r = vector_field_lift_check({rand_c(), rand_c(), rand_c()});
        lift = std::max(lift, r.numeric);
        sym += r.symbolic_terms_e + r.symbolic_terms_f + r.symbolic_terms_z + r.symbolic_terms_bracket;
        sym_ad += r.symbolic_terms_bracket_ad;
    }
    // Delta-compatibility of the derivations, literal and with the inner derivation
    int lit_bad = 0, corr_bad = 0, mon = 0;
    std::string lit_first;
    for (int n : {3, 5}) {
        const auto* f = CycloField::get(n, 1);
        for (int t = 0; t <= 2; ++t)
            for (int s = -2; s <= 2; ++s)
                for (int r = 0; r <= 2; ++r) {
                    const P u = P::monomial(f, {t, s, r});
                    ++mon;
                    if (!coproduct_derivation_check(u)) {
                        if (!lit_bad) lit_first = fmt("n=%d E^%d K^%d F^%d", n, t, s, r);
                        ++lit_bad;
                    }
                    corr_bad += !coproduct_derivation_check(u, true);
                }
    }
    // flow against twist
    double flow = 0;
    int samples = 0;
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 20; ++k) {
            const ModuleRep v = rand_module(ctx);
            const CentralCharacter chi = central_character(v);
            const Gen a = k % 3 == 0 ? Gen::e : k % 3 == 1 ? Gen::f : Gen::z;
            cplx t = rand_c(0.1, 1.0);
            const double growth = std::abs(t * generator_value(a, tau(chi))) / n;
            if (growth > 5) t *= 5 / growth;
            const CentralCharacter cw = character_from_action(twist_module(a, t, v), 1e-6);
            const Z0Character fl = flow_character(a, t, tau(chi)).end;
            const double scale = std::max({1.0, std::abs(fl.x), std::abs(fl.y), std::abs(fl.z)});
            flow = std::max(flow, std::max({std::abs(cw.x - fl.x), std::abs(cw.y - fl.y), std::abs(cw.z - fl.z)}) / scale);
            ++samples;
        }
    }
    const bool ok = jac_bad == 0 && leib_bad == 0 && lift <= 1e-10 && sym == 0 && lit_bad == 0 && flow <= 1e-6;
    d += fmt("Jacobi failures %d; Leibniz failures %d\n", jac_bad, leib_bad);
    d += fmt("vector-field lift: numeric %.2e, symbolic leftover terms %d (with h_ = ad(h): %d)\n", lift, sym, sym_ad);
    d += fmt("Delta(D_e u) = (D_e x 1 + z x D_e - D_z x zx) Delta(u): %d of %d monomials fail, first %s\n", lit_bad, mon, lit_first.c_str());
    d += fmt("same with the inner derivation of the middle terms of Delta(E^n): %d of %d fail\n", corr_bad, mon);
    d += fmt("flow vs twist: %d samples, max %.2e\n", samples, flow);
    return {ok,
            fmt("Jacobi/Leibniz exact, lift %.1e, flow %.1e; Delta-compatibility of derivations fails on %d/%d monomials "
                "(holds with inner-derivation correction: %d failures)",
                lift, flow, lit_bad, mon, corr_bad),
            d};
}

struct PairData {
    double spectrum = 0, twistcop = 0, det = 0;
    int pairs = 0;
};

PairData pair_data() {
    PairData p;
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        const Mat om_scale = Mat::Identity(1, 1);
        for (int k = 0; k < 50; ++k) {
            const ModuleRep a = rand_module(ctx), b = rand_module(ctx);
            const TensorRep t = tensor_rep(a, b);
            const Mat omega = act(t.product, casimir<Cyclo>(CycloField::get(n, 1)));
            Eigen::ComplexEigenSolver<Mat> es(omega, false);
            std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n * n), want;
            const auto fib = tau_fiber(t.h, ctx);
            double scale = 1;
            for (const auto& c : fib) {
                scale = std::max(scale, std::abs(c.c));
                for (int i = 0; i < n; ++i) want.push_back(c.c);
            }
            p.spectrum = std::max(p.spectrum, multiset_distance(ev, want) / scale);
            const EvaluationMap e = evaluation_map(a, b);
            p.twistcop = std::max(p.twistcop, twistcop_residual(e, a, b));
            p.det = std::max(p.det, std::abs(e.K.determinant() - 1.0));
            ++p.pairs;
        }
    }
    return p;
}

Outcome c8() {
    const ScalarContext ctx{3, 1};
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
        const ModuleRep a = rand_module(ctx), b = rand_module(ctx), c = rand_module(ctx), d = rand_module(ctx);
        worst = std::max(worst, pentagon_check(a, b, c, d));
    }
    double worst5 = 0;
    const ScalarContext ctx5{5, 1};
    for (int k = 0; k < 20; ++k) {
        const ModuleRep a = rand_module(ctx5), b = rand_module(ctx5), c = rand_module(ctx5), d = rand_module(ctx5);
        worst5 = std::max(worst5, pentagon_check(a, b, c, d));
    }
    return {worst <= 1e-6 && worst5 <= 1e-6, fmt("20 tuples n=3: %.2e; 20 tuples n=5: %.2e", worst, worst5),
            ""};
}

Outcome c9() {
    double inv = 0, per = 0;
    bool zero_ok = true;
    for (int n : {3, 5, 7}) {
        for (int k = 0; k < 5; ++k) {
            const cplx w0 = rand_c();
            const cplx u = std::exp(std::log(w0) / double(n)), v = std::exp(std::log(1.0 - w0) / double(n));
            const Mat I = Mat::Identity(n * n, n * n);
            inv = std::max(inv, (Ln_matrix(u, v, n) * Ln_inverse(u, v, n) - I).cwiseAbs().maxCoeff());
            zero_ok &= omega(u, v, 0, n) == cplx(1.0);
            for (int j = -n; j < 2 * n; ++j) per = std::max(per, std::abs(omega(u, v, j + n, n) - omega(u, v, j, n)));
        }
    }
    return {inv <= 1e-10 && zero_ok && per <= 1e-12,
            fmt("n = 3,5,7: |L L^-1 - I| %.2e; omega(.|0) = 1 %s; periodicity %.2e", inv, zero_ok ? "exact" : "NO", per),
            ""};
}

Outcome c10() {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double r3 = 0, r5 = 0, wp = 0, modphase = 0;
    int off = 0;
    bool charges = true, minimal = true;
    std::string d;
    for (int n : {3, 5})
        for (int k = 0; k < 10; ++k) {
            const cplx x{u(rng), u(rng)}, y{u(rng), u(rng)};
            const TransitPattern p = build_23_transit(x, y, n);
            const TransitResidual tr = transit_residual(p);
            charges &= tr.charges_equal && tr.tetra_valid;
            minimal &= p.certified_minimal;
            wp = std::max(wp, tr.w_prime);
            const FiveTerm ft = five_term(p);
            (n == 3 ? r3 : r5) = std::max(n == 3 ? r3 : r5, ft.residual);
            modphase = std::max(modphase, ft.phase_residual);
            off += ft.phase != 0;
            std::string signs;
            for (const auto& t : p.tetra) signs += t.w0.imag() > 0 ? '+' : '-';
            d += fmt("  n=%d x=%s y=%s Im w0 signs %s: residual %.3e, after zeta^%d on R(T') %.3e\n", n,
                     cstr(x).c_str(), cstr(y).c_str(), signs.c_str(), ft.residual, ft.phase, ft.phase_residual);
        }
    const ConventionSearch s = face_convention_search({0.3, 0.4}, {-0.2, 0.7}, 3);
    d = "random samples, (x, y) uniform in [-2, 2]^2:\n" + d;
    d += "face-convention search, n = 3, x = 0.3+0.4i, y = -0.2+0.7i (letters i,j,k,l -> faces):\n";
    for (const auto& c : s.cases)
        d += fmt("  %d%d%d%d %s residual %.3e%s\n", c.roles[0], c.roles[1], c.roles[2], c.roles[3],
                 c.inverse ? "*b=-1" : "*b=+1", c.residual, c.residual <= 1e-8 ? "  PASS" : "");
    const bool ok = r3 <= 1e-8 && r5 <= 1e-7 && charges && wp <= 1e-10 && s.classes == 1;
    return {ok,
            fmt("n=3: %.2e, n=5: %.2e (%d/20 off by a global zeta^k, %.1e after it); charges equal %s, W' %.1e; search: %zu/48 pass, %d class modulo "
                "delta_a -> delta_{3-a}, frozen (i,j,k,l) -> (1,3,0,2)",
                r3, r5, off, modphase, charges ? "exactly" : "NO", wp, s.passing.size(), s.classes),
            d};
}

Outcome c11() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    int done = 0;
    while (done < 100) {
        double x = u(rng), y = u(rng);
        if (y > x) std::swap(x, y);
        if (y < 1e-6 || x - y < 1e-6) continue;
        worst = std::max(worst, std::abs(classical_five_term(x, y)));
        ++done;
    }
    return {worst <= 1e-10, fmt("100 pairs 0<y<x<1: max |sum| %.2e", worst), ""};
}

Outcome c12() {
    bool all = true;
    std::string summary, d = "conv: 0 cr, 1 1/cr, 2 1-cr, 3 1/(1-cr), 4 cr/(cr-1), 5 (cr-1)/cr, cr = (a-c)(b-d)/((a-b)(c-d))\n";
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        double best = 1e300, best_scaling = 1e300;
        size_t cands = 0;
        for (int k = 0; k < 5; ++k) {
            const ModuleRep a = rand_module(ctx), b = rand_module(ctx), c = rand_module(ctx);
            const ReductionReport r = reduction_check(a, b, c);
            all &= r.pass;
            best = std::min(best, r.best);
            best_scaling = std::min(best_scaling, r.best_scaling);
            cands = r.candidates.size();
            d += fmt("n=%d triple %d: points 0, %s, %s, %s; best char-poly %.3e, best scaling %.3e, R block spread %.3e\n",
                     n, k, cstr(r.points[1]).c_str(), cstr(r.points[2]).c_str(), cstr(r.points[3]).c_str(), r.best,
                     r.best_scaling, r.block_spread);
            d += "  conv  w0                       w0'                      1/w1'                    charpoly    scaling\n";
            for (const auto& cand : r.candidates)
                d += fmt("  %d     %-24s %-24s %-24s %.3e   %.3e\n", cand.convention, cstr(cand.w0).c_str(),
                         cstr(cand.u).c_str(), cstr(cand.v).c_str(), cand.charpoly_residual, cand.scaling_residual);
        }
        summary += fmt("%sn=%d, 5 triples x %zu candidates: best char-poly %.2e, best block-scaling %.2e",
                       summary.empty() ? "" : "; ", n, cands, best, best_scaling);
    }
    return {all, summary + " (table below)", d};
}

Outcome c13() {
    bool qd = true;
    for (int n : {5, 7}) {
        const auto* f = CycloField::get(n, 1);
        for (int sg : {1, -1})
            for (int r = 0; r <= n - 2; ++r) qd &= qdim_exact(r, sg, f) == Cyclo(long(sg)) * qint<Cyclo>(f, r + 1);
    }
    bool book = true;
    int pairs = 0;
    for (int n : {5, 7}) {
        const ScalarContext ctx{n, 1};
        for (int i = 0; i <= n - 2; ++i)
            for (int j = 0; i + j <= n - 2; ++j) {
                const ModuleRep t = tensor_product(color_module(i, ctx), color_module(j, ctx));
                int dims = 0;
                for (int k = 0; k <= n - 2; ++k)
                    if (admissible(i, j, k, n)) dims += k + 1;
                book &= dims == t.dim && static_cast<int>(highest_weight_vectors(t).size()) == std::min(i, j) + 1;
                ++pairs;
            }
    }
    const EBResult eb = elliot_biedenharn({5, 1});
    return {qd && book && eb.max_residual <= 1e-8,
            fmt("qdim exact %s; bookkeeping %s on %d pairs; EB n=5: %d configurations (%d nonzero), residual %.2e",
                qd ? "yes" : "NO", book ? "exact" : "NO", pairs, eb.configurations, eb.nontrivial, eb.max_residual),
            ""};
}

Outcome c14() {
    double perm = 0, clos = 0, power = 0;
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 5; ++k) {
            const cplx b = rand_c();
            const HolonomyResult h = holonomy_check(rand_c(), rand_c(), b, ctx);
            perm = std::max(perm, h.permutation_residual);
            clos = std::max(clos, h.closure_residual);
            power = std::max(power, h.power_residual);
        }
    }
    return {perm <= 1e-8 && clos <= 1e-8,
            fmt("loop holonomy vs (delta_{i+1,j}) up to scalar %.2e; character closure %.2e; n-fold composite "
                "scalar to %.2e",
                perm, clos, power),
            ""};
}

}  // namespace

std::vector<Criterion> run_suite(std::uint64_t seed, const std::function<void(const Criterion&)>& progress) {
    rng.seed(seed);
    std::vector<std::pair<std::string, std::function<Outcome()>>> crit;
    PairData pd;
    bool pd_done = false;
    auto pairs = [&]() -> const PairData& {
        if (!pd_done) pd = pair_data(), pd_done = true;
        return pd;
    };
    crit.emplace_back("Hopf axioms", c1);
    crit.emplace_back("Center relation", c2);
    crit.emplace_back("Module relations and characters", c3);
    crit.emplace_back("Harish-Chandra", c4);
    crit.emplace_back("Coadjoint suite", c5);
    crit.emplace_back("Fusion spectra", [&] {
        const PairData& p = pairs();
        return Outcome{p.spectrum <= 1e-8, fmt("%d pairs, n = 3, 5: max spectrum distance %.2e", p.pairs, p.spectrum), ""};
    });
    crit.emplace_back("Evaluation map", [&] {
        const PairData& p = pairs();
        return Outcome{p.twistcop <= 1e-8 && p.det <= 1e-8, fmt("twistcop %.2e, |det K - 1| %.2e", p.twistcop, p.det), ""};
    });
    crit.emplace_back("Regular pentagon", c8);
    crit.emplace_back("Matrix dilogarithm", c9);
    crit.emplace_back("Five-term identity", c10);
    crit.emplace_back("Classical five-term", c11);
    crit.emplace_back("Reduction", c12);
    crit.emplace_back("Color category", c13);
    crit.emplace_back("Holonomy loop", c14);

    std::vector<Criterion> out;
    for (size_t i = 0; i < crit.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = crit[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), ""};
        }
        Criterion c{static_cast<int>(i) + 1, crit[i].first, o.pass, o.summary, o.details,
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
        if (progress) progress(c);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace uqeps::acceptance
