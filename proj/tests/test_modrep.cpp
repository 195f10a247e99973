#include "doctest.h"

#include <random>

#include "uqeps/modrep.hpp"
#include "uqeps/qalgebra.hpp"

using namespace uqeps;

namespace {

cplx rand_c(std::mt19937_64& g, double lo = 0.3, double hi = 1.7) {
    std::uniform_real_distribution<double> r(lo, hi), ph(0.0, 2 * M_PI);
    return std::polar(r(g), ph(g));
}

GenericSpec rand_generic(std::mt19937_64& g) { return {rand_c(g), rand_c(g), rand_c(g)}; }

double char_dist(const CentralCharacter& a, const CentralCharacter& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z), std::abs(a.c - b.c)});
}

}  // namespace

TEST_CASE("V_1^+ at n = 3") {
    const ScalarContext ctx{3, 1};
    const cplx eps = ctx.epsilon();
    const ModuleRep v = build_module(HighestWeightSpec{1, 1}, ctx);
    CHECK(v.dim == 2);
    CHECK(std::abs(v.K(0, 0) - eps) < 1e-14);
    CHECK(std::abs(v.K(1, 1) - 1.0 / eps) < 1e-14);
    CHECK(std::abs(v.F(1, 0) - 1.0) < 1e-14);
    CHECK(std::abs(v.E(0, 1) - 1.0) < 1e-14);
    CHECK(relation_residual(v) < 1e-13);
}

TEST_CASE("V(lambda,0,0) and the top highest weight module") {
    for (int n : {3, 5, 7}) {
        const ScalarContext ctx{n, 1};
        const cplx eps = ctx.epsilon();
        const cplx lam{1.2, -0.4};
        const ModuleRep v = build_module(GenericSpec{lam, 0.0, 0.0}, ctx);
        CHECK(std::abs(v.E(0, 1) - (lam - 1.0 / lam) / (eps - 1.0 / eps)) < 1e-13);
        CHECK(std::abs(v.F(0, n - 1)) == 0.0);
        for (int sg : {1, -1}) {
            const ModuleRep top = build_module(HighestWeightSpec{n - 1, sg}, ctx);
            const ModuleRep gen = build_module(GenericSpec{double(sg) / eps, 0.0, 0.0}, ctx);
            CHECK(rel_diff(top.E, gen.E) < 1e-13);
            CHECK(rel_diff(top.F, gen.F) < 1e-13);
            CHECK(rel_diff(top.K, gen.K) < 1e-13);
        }
    }
    CHECK_THROWS_AS(build_module(GenericSpec{0.0, 1.0, 1.0}, {3, 1}), RepError);
    CHECK_THROWS_AS(build_module(HighestWeightSpec{3, 1}, {3, 1}), RepError);
}

TEST_CASE("random generic modules: relations, characters, hypersurface") {
    std::mt19937_64 g(7);
    for (int n : {3, 5, 7}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 40; ++k) {
            const ModuleRep v = build_module(rand_generic(g), ctx);
            CHECK(relation_residual(v) < 1e-12);
            const CentralCharacter chi = central_character(v);
            CHECK(hypersurface_residual(chi, ctx) < 1e-9);
            // F^n acts by b
            CHECK(rel_diff(act(v, PBW<Cyclo>::F(CycloField::get(n, 1), n)),
                           std::get<GenericSpec>(v.spec).b * Mat::Identity(n, n)) < 1e-10);
            // quantum dimension zero
            CHECK(std::abs(v.K.trace()) < 1e-10);
        }
    }
}

TEST_CASE("highest weight characters and Casimir symmetry") {
    for (int n : {3, 5, 7})
        for (int d : {1, 2}) {
            const ScalarContext ctx{n, d};
            for (int sg : {1, -1})
                for (int r = 0; r < n; ++r) {
                    const ModuleRep v = build_module(HighestWeightSpec{r, sg}, ctx);
                    CHECK(relation_residual(v) < 1e-12);
                    const CentralCharacter chi = central_character(v);
                    CHECK(std::abs(chi.x) < 1e-12);
                    CHECK(std::abs(chi.z - double(sg)) < 1e-12);
                    CHECK(hypersurface_residual(chi, ctx) < 1e-9);
                    if (r <= n - 2) {
                        const auto mirror = character_closed_form(HighestWeightSpec{n - r - 2, sg}, ctx);
                        CHECK(std::abs(chi.c - mirror.c) < 1e-12);
                    }
                }
        }
}

TEST_CASE("act is multiplicative") {
    std::mt19937_64 g(11);
    std::uniform_int_distribution<int> small(0, 2), ks(-2, 2), coef(-3, 3);
    for (int n : {3, 5}) {
        const auto* f = CycloField::get(n, 1);
        const ModuleRep v = build_module(rand_generic(g), {n, 1});
        for (int k = 0; k < 10; ++k) {
            PBW<Cyclo> a(f), b(f);
            for (int j = 0; j < 3; ++j) {
                a.add_term({small(g), ks(g), small(g)}, Cyclo(long(coef(g))) + Cyclo::qpow(f, j));
                b.add_term({small(g), ks(g), small(g)}, Cyclo(long(coef(g))) * Cyclo::qpow(f, 2 * j + 1));
            }
            CHECK(rel_diff(act(v, a * b), act(v, a) * act(v, b)) < 1e-10);
        }
        CHECK(rel_diff(act(v, PBW<Cyclo>::one(f)), Mat::Identity(n, n)) < 1e-14);
    }
}

TEST_CASE("center relation as matrices on random modules") {
    // independent of the PBW normal form: the residual element must act by zero
    std::mt19937_64 g(3);
    for (int n : {3, 5}) {
        const auto* f = CycloField::get(n, 1);
        for (int sg : {1, -1}) {
            const PBW<Cyclo> res = center_relation_residual(f, sg);
            for (int k = 0; k < 25; ++k) {
                const ModuleRep v = build_module(rand_generic(g), {n, 1});
                const Mat m = act(v, res);
                CHECK(m.cwiseAbs().maxCoeff() < 1e-8);
            }
        }
    }
}

TEST_CASE("dual modules") {
    std::mt19937_64 g(5);
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 10; ++k) {
            const ModuleRep v = build_module(rand_generic(g), ctx);
            const ModuleRep w = dual_module(v);
            CHECK(relation_residual(w) < 1e-11);
            const CentralCharacter a = central_character(v), b = central_character(w);
            const CentralCharacter inv{-a.z * a.x, -a.y * a.z, 1.0 / a.z, a.c};
            CHECK(char_dist(b, inv) < 1e-8 * std::max(1.0, std::abs(a.x) + std::abs(a.y)));
            const auto iso = module_intertwiners(v, dual_module(w));
            CHECK(iso.size() == 1);
        }
        for (int r = 0; r <= n - 2; ++r)
            for (int sg : {1, -1}) {
                const ModuleRep v = build_module(HighestWeightSpec{r, sg}, ctx);
                CHECK(module_intertwiners(v, dual_module(v)).size() == 1);
            }
    }
}

TEST_CASE("classification") {
    const ScalarContext ctx{5, 1};
    const auto c0 = character_closed_form(HighestWeightSpec{0, 1}, ctx);
    ClassFlags fl = classify(c0, ctx);
    CHECK(fl.singular);
    CHECK(fl.diagonal);
    CHECK_FALSE(fl.regular);
    fl = classify(character_closed_form(GenericSpec{{1.1, 0.3}, 0.0, 0.0}, ctx), ctx);
    CHECK(fl.regular);
    CHECK(fl.diagonal);
    CHECK(fl.regular_semisimple);
    CHECK_FALSE(fl.cyclic);
    fl = classify(character_closed_form(GenericSpec{{1.1, 0.3}, 0.8, 0.0}, ctx), ctx);
    CHECK(fl.triangular);
    CHECK_FALSE(fl.diagonal);
    fl = classify(character_closed_form(GenericSpec{{1.1, 0.3}, 0.8, {0.2, 0.9}}, ctx), ctx);
    CHECK(fl.cyclic);
    CHECK(fl.regular);
    // the top color r = n-1 is regular (Steinberg-like), not in D
    CHECK(classify(character_closed_form(HighestWeightSpec{4, 1}, ctx), ctx).regular);
}

TEST_CASE("exact sequence for V(+-eps^r, 0, 0)") {
    for (int n : {3, 5, 7}) {
        const ScalarContext ctx{n, 1};
        const cplx eps = ctx.epsilon();
        for (int sg : {1, -1})
            for (int r = 0; r <= n - 2; ++r) {
                const ModuleRep v = build_module(GenericSpec{double(sg) * std::pow(eps, r), 0.0, 0.0}, ctx);
                const auto hw = highest_weight_vectors(v);
                REQUIRE(hw.size() == 2);
                Eigen::Index i0, i1;
                hw[0].vector.cwiseAbs().maxCoeff(&i0);
                hw[1].vector.cwiseAbs().maxCoeff(&i1);
                CHECK(i0 == 0);
                CHECK(i1 == r + 1);
                CHECK(std::abs(hw[1].weight - double(sg) * std::pow(eps, r - 2 * (r + 1))) < 1e-10);
                CHECK(generated_submodule_dim(v, hw[1].vector) == n - r - 1);
                // submodule is V_{n-r-2}^{sign}: same K spectrum as its highest weight
                const auto sub = character_closed_form(HighestWeightSpec{n - r - 2, sg}, ctx);
                CHECK(std::abs(central_character(v).c - sub.c) < 1e-9);
            }
        for (int r = 0; r < n; ++r) CHECK(highest_weight_vectors(build_module(HighestWeightSpec{r, 1}, ctx)).size() == 1);
    }
    std::mt19937_64 g(9);
    const ModuleRep cyc = build_module(rand_generic(g), {5, 1});
    CHECK(highest_weight_vectors(cyc).empty());
}

TEST_CASE("reindexing and holonomy") {
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        const GenericSpec s{{1.3, 0.2}, 0.7, 1.1};
        const auto c0 = central_character(build_module(s, ctx));
        for (int i = 1; i < n; ++i) {
            const auto ci = central_character(build_module(reindex(s, i, ctx), ctx));
            CHECK(char_dist(c0, ci) < 1e-9);
        }
        const HolonomyResult h = holonomy_check(s.lambda, s.a, s.b, ctx);
        CHECK(h.path_residual < 1e-12);
        CHECK(h.closure_residual < 1e-9);
        CHECK(h.permutation_residual < 1e-8);
        CHECK(h.power_residual < 1e-8);
    }
    CHECK_THROWS_AS(holonomy_check(1.0, 1.0, 0.0, {3, 1}), RepError);
}
