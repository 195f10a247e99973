#include "uqeps/qalgebra.hpp"

namespace uqeps {

Z0Generators z0_generators(const CycloField* f) {
    using P = PBW<Cyclo>;
    const int n = f->n;
    const Cyclo qd = Cyclo::qpow(f, 1) - Cyclo::qpow(f, -1);
    const Cyclo qdn = qd.pow(n);
    Z0Generators g;
    g.x = P::monomial(f, {0, -n, n}, -qdn * Cyclo::qpow(f, 2 * n * n));  // E^n K^{-n} = q^{2n^2} K^{-n} E^n
    g.y = P::monomial(f, {n, 0, 0}, qdn);
    g.z = P::K(f, n);
    g.zinv = P::K(f, -n);
    g.e = P::monomial(f, {0, 0, n}, qdn);
    g.f = P::monomial(f, {n, n, 0}, -qdn);
    return g;
}

Cyclo casimir_value(const CycloField* f, int j, int sign) {
    Cyclo v = (Cyclo::qpow(f, j + 1) + Cyclo::qpow(f, -j - 1)) * Cyclo::qdiff_inv(f, 2);
    return sign > 0 ? v : -v;
}

PBW<Cyclo> center_relation_residual(const CycloField* f, int sign) {
    using P = PBW<Cyclo>;
    const int n = f->n;
    const P omega = casimir<Cyclo>(f);
    P prod = P::one(f);
    for (int j = 0; j < n; ++j) prod *= omega - P::scalar(f, casimir_value(f, j, sign));
    P rhs = P::E(f, n) * P::F(f, n);
    const Cyclo inv = Cyclo::qdiff_inv(f, 2 * n);
    rhs.add_term({0, n, 0}, inv);
    rhs.add_term({0, -n, 0}, inv);
    rhs.add_term({0, 0, 0}, -inv * Cyclo(sign > 0 ? 2L : -2L));
    return prod - rhs;
}

PBW<Cyclo> casimir_factor_residual(const CycloField* f, int r) {
    using P = PBW<Cyclo>;
    const P omega = casimir<Cyclo>(f);
    const Cyclo inv2 = Cyclo::qdiff_inv(f, 2);
    P prod = P::one(f);
    for (int j = 0; j < r; ++j) {
        P factor = omega;
        factor.add_term({0, 1, 0}, -Cyclo::qpow(f, 2 * j + 1) * inv2);
        factor.add_term({0, -1, 0}, -Cyclo::qpow(f, -2 * j - 1) * inv2);
        prod *= factor;
    }
    return prod - P::monomial(f, {r, 0, r});
}

std::optional<std::string> hopf_axiom_failure(const Mono& m) {
    using S = QLaurent;
    using P = PBW<S>;
    const S::Context c{};
    const P a = P::monomial(c, m);
    const auto d = coproduct(a);
    if (coproduct_on_slot(d, 0) != coproduct_on_slot(d, 1)) return "coassociativity";
    const P counit_left = [&] {
        P out(c);
        for (const auto& [k, v] : d.terms()) {
            const S e = counit(P::monomial(c, k[0]));
            if (!e.is_zero()) out.add_term(k[1], v * e);
        }
        return out;
    }();
    const P counit_right = [&] {
        P out(c);
        for (const auto& [k, v] : d.terms()) {
            const S e = counit(P::monomial(c, k[1]));
            if (!e.is_zero()) out.add_term(k[0], v * e);
        }
        return out;
    }();
    if (counit_left != a || counit_right != a) return "counit";
    const P unit = P::scalar(c, counit(a));
    auto id = [](const P& x) { return x; };
    auto sp = [](const P& x) { return antipode(x); };
    if (multiply_slots(map_slots(d, sp, id)) != unit) return "antipode (S x id)";
    if (multiply_slots(map_slots(d, id, sp)) != unit) return "antipode (id x S)";
    return std::nullopt;
}

}  // namespace uqeps
