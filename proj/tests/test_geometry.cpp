#include "doctest.h"

#include <random>

#include "uqeps/geometry.hpp"
#include "uqeps/qalgebra.hpp"

using namespace uqeps;

namespace {

cplx rand_c(std::mt19937_64& g) {
    std::uniform_real_distribution<double> r(0.4, 1.6), ph(0.0, 2 * M_PI);
    return std::polar(r(g), ph(g));
}

Z0Character rand_g(std::mt19937_64& g) { return {rand_c(g), rand_c(g), rand_c(g)}; }

double gdist(const Z0Character& a, const Z0Character& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace

TEST_CASE("group law") {
    std::mt19937_64 g(1);
    for (int k = 0; k < 50; ++k) {
        const Z0Character a = rand_g(g), b = rand_g(g), c = rand_g(g);
        CHECK(gdist(group_mul(a, group_identity()), a) < 1e-14);
        CHECK(gdist(group_mul(group_identity(), a), a) < 1e-14);
        CHECK(gdist(group_mul(a, group_inv(a)), group_identity()) < 1e-13);
        CHECK(gdist(group_mul(group_inv(a), a), group_identity()) < 1e-13);
        CHECK(gdist(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))) < 1e-12);
    }
}

TEST_CASE("psi is a homomorphism, sigma has the deck symmetry") {
    std::mt19937_64 g(2);
    for (int k = 0; k < 100; ++k) {
        const Z0Character a = rand_g(g), b = rand_g(g);
        const auto pa = psi(a), pb = psi(b), pab = psi(group_mul(a, b));
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(pa[i].determinant() - 1.0) < 1e-12);
            CHECK(psl_distance(pa[i] * pb[i], pab[i]) < 1e-10);
        }
        CHECK(std::abs(sigma(a).determinant() - 1.0) < 1e-12);
        CHECK(psl_distance(sigma(a), sigma({a.x, a.y, -a.z})) < 1e-14);
        CHECK(psl_distance(sigma(a), pa[1].inverse() * pa[0]) < 1e-12);
    }
    CHECK(psl_distance(sigma(group_identity()), Mat2::Identity()) < 1e-15);
}

TEST_CASE("tau fibers") {
    for (int n : {3, 5, 7}) {
        const ScalarContext ctx{n, 1};
        const cplx eps = ctx.epsilon();
        const cplx qd = eps - 1.0 / eps;
        // over the identity: the c_j^+ with their pairings
        const auto fib = tau_fiber(group_identity(), ctx);
        REQUIRE(fib.size() == size_t(n));
        std::vector<cplx> got, want;
        for (const auto& c : fib) got.push_back(c.c);
        for (int j = 0; j < n; ++j) want.push_back((std::pow(eps, j + 1) + std::pow(eps, -j - 1)) / (qd * qd));
        CHECK(multiset_distance(got, want) < 1e-6);  // double roots: sqrt of machine precision
        // regular semisimple diagonal point
        const cplx lam{1.1, 0.4};
        const Z0Character h{0.0, 0.0, std::pow(lam, n)};
        got.clear();
        want.clear();
        for (const auto& c : tau_fiber(h, ctx)) {
            got.push_back(c.c);
            CHECK(hypersurface_residual(c, ctx) < 1e-9);
        }
        for (int k = 0; k < n; ++k) {
            const cplx l = lam * std::polar(1.0, 2 * M_PI * k / n);
            want.push_back((l * eps + 1.0 / (l * eps)) / (qd * qd));
        }
        CHECK(multiset_distance(got, want) < 1e-9);
        // fibers of random modules contain their Casimir value
        const ModuleRep v = build_module(GenericSpec{{0.9, 0.5}, {0.3, -0.8}, {1.2, 0.1}}, ctx);
        const CentralCharacter chi = central_character(v);
        double best = 1e9;
        for (const auto& c : tau_fiber(tau(chi), ctx)) best = std::min(best, std::abs(c.c - chi.c));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("singular set") {
    for (int n : {3, 5, 7}) {
        const ScalarContext ctx{n, 1};
        const auto* f = CycloField::get(n, 1);
        CHECK(singular_set(ctx).size() == size_t(n - 1));
        for (const auto& s : singular_set(ctx)) CHECK(is_singular(s, ctx));
        const auto top = character_closed_form(HighestWeightSpec{n - 1, 1}, ctx);
        CHECK_FALSE(is_singular(top, ctx));
        CHECK(is_singular(character_closed_form(HighestWeightSpec{0, 1}, ctx), ctx));
        CHECK_FALSE(is_singular({0.3, 0.1, {0.5, 0.2}, 0.7}, ctx));
        for (int sg : {1, -1})
            for (int r = 0; r < n; ++r) {
                const bool in_d = r <= (n - 3) / 2 || (r <= n - 2 && n - r - 2 <= (n - 3) / 2);
                CHECK(is_singular_exact(f, 0L, 0L, long(sg), casimir_value(f, r, sg)) == in_d);
                CHECK(is_singular(character_closed_form(HighestWeightSpec{r, sg}, ctx), ctx) == in_d);
            }
        CHECK_FALSE(is_singular_exact(f, 1L, 0L, 1L, casimir_value(f, 0, 1)));
    }
}
