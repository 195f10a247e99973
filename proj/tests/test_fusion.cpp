#include "doctest.h"

#include <random>

#include "uqeps/coadjoint.hpp"
#include "uqeps/fusion.hpp"
#include "uqeps/qalgebra.hpp"

using namespace uqeps;

namespace {

cplx rand_c(std::mt19937_64& g) {
    std::uniform_real_distribution<double> r(0.5, 1.5), ph(0.0, 2 * M_PI);
    return std::polar(r(g), ph(g));
}

ModuleRep rand_module(std::mt19937_64& g, const ScalarContext& ctx) {
    return build_module(GenericSpec{rand_c(g), rand_c(g), rand_c(g)}, ctx);
}

}  // namespace

TEST_CASE("tensor product of regular modules") {
    std::mt19937_64 g(21);
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        const auto* f = CycloField::get(n, 1);
        const Z0Generators z0 = z0_generators(f);
        for (int k = 0; k < 5; ++k) {
            const ModuleRep a = rand_module(g, ctx), b = rand_module(g, ctx);
            const TensorRep t = tensor_rep(a, b);
            CHECK(relation_residual(t.product) < 1e-11);
            const CentralCharacter ca = central_character(a), cb = central_character(b);
            CHECK(std::abs(t.h.z - ca.z * cb.z) < 1e-10);
            CHECK(std::abs(t.h.x - (cb.x + ca.x / cb.z)) < 1e-9 * std::max(1.0, std::abs(t.h.x)));
            // Z_0 acts on the product by the scalars h
            const Mat X = act(t.product, z0.x), Y = act(t.product, z0.y), Z = act(t.product, z0.z);
            const Mat I = Mat::Identity(n * n, n * n);
            CHECK(rel_diff(X, t.h.x * I) < 1e-9);
            CHECK(rel_diff(Y, t.h.y * I) < 1e-9);
            CHECK(rel_diff(Z, t.h.z * I) < 1e-9);
            // Delta(K) is diagonal with products of eigenvalues
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) CHECK(std::abs(t.product.K(i * n + j, i * n + j) - a.K(i, i) * b.K(j, j)) < 1e-13);
        }
    }
}

TEST_CASE("non-regular pairs are rejected") {
    std::mt19937_64 g(22);
    const ScalarContext ctx{3, 1};
    const ModuleRep a = rand_module(g, ctx);
    const Z0Character inv = group_inv(tau(central_character(a)));
    const ModuleRep b = standard_model(tau_fiber(inv, ctx).front(), ctx);
    CHECK_THROWS_AS(tensor_rep(a, b), FusionError);
    CHECK_THROWS_AS(evaluation_map(a, b), FusionError);
}

TEST_CASE("Casimir idempotents") {
    std::mt19937_64 g(23);
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 5; ++k) {
            const ModuleRep a = rand_module(g, ctx), b = rand_module(g, ctx);
            const TensorRep t = tensor_rep(a, b);
            const IdempotentSet s = idempotents(t);
            const int N = n * n;
            Mat sum = Mat::Zero(N, N);
            for (int i = 0; i < n; ++i) {
                const Mat& p = s.projectors[i];
                sum += p;
                CHECK(numerical_rank(p, 1e-8) == n);
                for (const Mat* m : {&t.product.E, &t.product.F, &t.product.K})
                    CHECK(rel_diff(p * *m, *m * p) < 1e-9);
                for (int j = 0; j < n; ++j) {
                    const Mat want = i == j ? p : Mat::Zero(N, N);
                    CHECK(rel_diff(p * s.projectors[j], want) < 1e-9);
                }
                // the image carries the standard model of chi
                const ModuleRep m = standard_model(s.fiber[i], ctx);
                CHECK(module_intertwiners(m, t.product, 1e-9).size() == 1);
            }
            CHECK(rel_diff(sum, Mat::Identity(N, N)) < 1e-9);
        }
    }
}

TEST_CASE("evaluation map") {
    std::mt19937_64 g(24);
    for (int n : {3, 5}) {
        const ScalarContext ctx{n, 1};
        for (int k = 0; k < 5; ++k) {
            const ModuleRep a = rand_module(g, ctx), b = rand_module(g, ctx);
            const EvaluationMap ev = evaluation_map(a, b);
            CHECK(twistcop_residual(ev, a, b) < 1e-8);
            CHECK(std::abs(ev.K.determinant() - 1.0) < 1e-8);
            // another pair with the same product character gives the same block structure
            const Z0Character h = group_mul(tau(central_character(a)), tau(central_character(b)));
            const ModuleRep c = rand_module(g, ctx);
            const Z0Character rest = group_mul(group_inv(tau(central_character(c))), h);
            const ModuleRep d = standard_model(tau_fiber(rest, ctx).front(), ctx);
            const EvaluationMap ev2 = evaluation_map(c, d);
            REQUIRE(ev2.fiber.size() == ev.fiber.size());
            for (int i = 0; i < n; ++i) {
                CHECK(std::abs(ev2.fiber[i].c - ev.fiber[i].c) < 1e-8 * std::max(1.0, std::abs(ev.fiber[i].c)));
                CHECK(rel_diff(ev2.models[i].E, ev.models[i].E) < 1e-8);
                CHECK(rel_diff(ev2.models[i].F, ev.models[i].F) < 1e-8);
            }
            CHECK(twistcop_residual(ev2, c, d) < 1e-8);
        }
    }
}

TEST_CASE("regular 6j operator") {
    std::mt19937_64 g(25);
    const ScalarContext ctx{3, 1};
    for (int k = 0; k < 20; ++k) {
        const ModuleRep a = rand_module(g, ctx), b = rand_module(g, ctx), c = rand_module(g, ctx);
        const SixJOperator s = sixj_operator(a, b, c);
        CHECK(s.factor_residual < 1e-6);
        CHECK(s.modpent_residual < 1e-6);
        Eigen::JacobiSVD<Mat> svd(s.R);
        const double cond = svd.singularValues()(0) / svd.singularValues()(8);
        CHECK(std::isfinite(cond));
        CHECK(cond < 1e12);
    }
}

TEST_CASE("relabelling the middle fiber multiplies R on one side") {
    std::mt19937_64 g(26);
    const ScalarContext ctx{3, 1};
    const int n = 3;
    Mat P = Mat::Zero(n, n);
    for (int l = 0; l < n; ++l) P((l + 1) % n, l) = 1.0;
    for (int k = 0; k < 3; ++k) {
        const ModuleRep a = rand_module(g, ctx), b = rand_module(g, ctx), c = rand_module(g, ctx);
        const Mat R = sixj_operator(a, b, c).R;
        const Mat Rp = sixj_operator(a, b, c, 1e-6, true).R;
        CHECK(rel_diff(Rp, R * kron(Mat::Identity(n, n), P)) < 1e-10);
    }
}

TEST_CASE("pentagon equation") {
    std::mt19937_64 g(27);
    const ScalarContext ctx{3, 1};
    for (int k = 0; k < 20; ++k) {
        const ModuleRep a = rand_module(g, ctx), b = rand_module(g, ctx), c = rand_module(g, ctx),
                        d = rand_module(g, ctx);
        CHECK(pentagon_check(a, b, c, d) < 1e-6);
        if (k < 3) {
            const ModuleRep bt = twist_module(Gen::e, 0.05, b);
            CHECK(pentagon_check(a, bt, c, d) < 1e-6);
        }
    }
    const ModuleRep a = rand_module(g, ctx);
    const Z0Character inv = group_inv(tau(central_character(a)));
    const ModuleRep b = standard_model(tau_fiber(inv, ctx).front(), ctx);
    CHECK_THROWS_AS(pentagon_check(a, b, rand_module(g, ctx), rand_module(g, ctx)), FusionError);
}
