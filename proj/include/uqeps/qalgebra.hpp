#pragma once

#include <optional>

#include "uqeps/pbw.hpp"

namespace uqeps {

// ------------------------------------------------------------ Hopf maps

/// Delta(F^t K^s E^r) = Delta(F)^t (K^s x K^s) Delta(E)^r, with the two q-binomial
/// expansions
///   Delta(F^t) = sum_j [t,j] q^{j(t-j)}  F^{t-j} (x) F^j K^{-(t-j)}
///   Delta(E^r) = sum_j [r,j] q^{-j(r-j)} K^{r-j} E^j (x) E^{r-j}
/// whose product is already normal ordered in each slot.
template <class S>
Tensor<S, 2> coproduct_monomial(typename S::Context ctx, const Mono& m) {
    Tensor<S, 2> out(ctx);
    for (int j = 0; j <= m.t; ++j) {
        const S cf = qbinom<S>(ctx, m.t, j) * S::qpow(ctx, j * (m.t - j));
        for (int i = 0; i <= m.r; ++i) {
            const S ce = qbinom<S>(ctx, m.r, i) * S::qpow(ctx, -i * (m.r - i));
            out.add_term({Mono{m.t - j, m.s + m.r - i, i}, Mono{j, m.s - (m.t - j), m.r - i}}, cf * ce);
        }
    }
    return out;
}

template <class S>
Tensor<S, 2> coproduct(const PBW<S>& a) {
    Tensor<S, 2> out(a.ctx());
    for (const auto& [m, v] : a.terms()) {
        const auto dm = coproduct_monomial<S>(a.ctx(), m);
        for (const auto& [k, c] : dm.terms()) out.add_term(k, c * v);
    }
    return out;
}

template <class S>
S counit(const PBW<S>& a) {
    S acc(0L);
    for (const auto& [m, v] : a.terms())
        if (m.t == 0 && m.r == 0) acc += v;
    return acc;
}

/// Extend generator images to an algebra morphism (or anti-morphism).
template <class S>
PBW<S> apply_morphism(const PBW<S>& a, const PBW<S>& imgE, const PBW<S>& imgF, const PBW<S>& imgK,
                      const PBW<S>& imgKinv, bool anti) {
    using P = PBW<S>;
    const auto ctx = a.ctx();
    std::map<int, P> powE, powF, powK, powKinv;
    auto power = [&](std::map<int, P>& cache, const P& base, int k) -> const P& {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache.emplace(k, base.pow(k)).first->second;
    };
    P out(ctx);
    for (const auto& [m, v] : a.terms()) {
        const P& f = power(powF, imgF, m.t);
        const P& k = m.s >= 0 ? power(powK, imgK, m.s) : power(powKinv, imgKinv, -m.s);
        const P& e = power(powE, imgE, m.r);
        out += (anti ? e * k * f : f * k * e) * v;
    }
    return out;
}

template <class S>
PBW<S> antipode(const PBW<S>& a) {
    using P = PBW<S>;
    const auto c = a.ctx();
    const P imgE = P::monomial(c, {0, -1, 1}, S(-1L));
    const P imgF = P::monomial(c, {1, 1, 0}, S(-1L));
    return apply_morphism(a, imgE, imgF, P::K(c, -1), P::K(c, 1), true);
}

/// omega(E) = F, omega(F) = E, omega(K) = K^{-1}
template <class S>
PBW<S> cartan_omega(const PBW<S>& a) {
    using P = PBW<S>;
    const auto c = a.ctx();
    return apply_morphism(a, P::F(c), P::E(c), P::K(c, -1), P::K(c, 1), false);
}

/// T(E) = -FK, T(F) = -K^{-1}E, T(K) = K^{-1}
template <class S>
PBW<S> braid_T(const PBW<S>& a) {
    using P = PBW<S>;
    const auto c = a.ctx();
    return apply_morphism(a, P::monomial(c, {1, 1, 0}, S(-1L)), P::monomial(c, {0, -1, 1}, S(-1L)), P::K(c, -1),
                          P::K(c, 1), false);
}

/// T^{-1}(E) = -K^{-1}F, T^{-1}(F) = -EK, T^{-1}(K) = K^{-1}
template <class S>
PBW<S> braid_T_inv(const PBW<S>& a) {
    using P = PBW<S>;
    const auto c = a.ctx();
    const P e = -(P::K(c, -1) * P::F(c));
    const P f = -(P::E(c) * P::K(c, 1));
    return apply_morphism(a, e, f, P::K(c, -1), P::K(c, 1), false);
}

// ------------------------------------------------------ tensor plumbing

/// Apply Delta to one slot of a 2-tensor, giving a 3-tensor.
template <class S>
Tensor<S, 3> coproduct_on_slot(const Tensor<S, 2>& a, int slot) {
    Tensor<S, 3> out(a.ctx());
    for (const auto& [k, v] : a.terms()) {
        const auto d = coproduct_monomial<S>(a.ctx(), k[slot]);
        for (const auto& [dk, dv] : d.terms()) {
            std::array<Mono, 3> key = slot == 0 ? std::array<Mono, 3>{dk[0], dk[1], k[1]}
                                                : std::array<Mono, 3>{k[0], dk[0], dk[1]};
            out.add_term(key, v * dv);
        }
    }
    return out;
}

template <class S>
Tensor<S, 2> flip(const Tensor<S, 2>& a) {
    Tensor<S, 2> out(a.ctx());
    for (const auto& [k, v] : a.terms()) out.add_term({k[1], k[0]}, v);
    return out;
}

/// Apply maps f, g to the two slots (each map acts on monomials).
template <class S, class Fn, class Gn>
Tensor<S, 2> map_slots(const Tensor<S, 2>& a, Fn&& f, Gn&& g) {
    Tensor<S, 2> out(a.ctx());
    for (const auto& [k, v] : a.terms()) {
        const PBW<S> l = f(PBW<S>::monomial(a.ctx(), k[0]));
        const PBW<S> r = g(PBW<S>::monomial(a.ctx(), k[1]));
        for (const auto& [ml, vl] : l.terms())
            for (const auto& [mr, vr] : r.terms()) out.add_term({ml, mr}, v * vl * vr);
    }
    return out;
}

/// mu: a (x) b -> ab
template <class S>
PBW<S> multiply_slots(const Tensor<S, 2>& a) {
    PBW<S> out(a.ctx());
    for (const auto& [k, v] : a.terms())
        mono_mul<S>(a.ctx(), k[0], k[1], v, [&](const Mono& m, const S& c) { out.add_term(m, c); });
    return out;
}

// ------------------------------------------------------ Casimir and HC

/// Omega = FE + (qK + q^{-1}K^{-1})/(q - q^{-1})^2
template <class S>
PBW<S> casimir(typename S::Context c) {
    PBW<S> out(c);
    out.add_term({1, 0, 1}, S(1L));
    const S inv2 = S::qdiff_inv(c, 2);
    out.add_term({0, 1, 0}, S::qpow(c, 1) * inv2);
    out.add_term({0, -1, 0}, S::qpow(c, -1) * inv2);
    return out;
}

/// Harish-Chandra projection: for a degree-0 element sum_r F^r h_r E^r, return h_0.
template <class S>
KPoly<S> hc_project(const PBW<S>& a) {
    KPoly<S> out;
    for (const auto& [m, v] : a.terms()) {
        if (m.t != m.r) throw AlgebraError("hc_project: input has nonzero degree");
        if (m.t == 0) kpoly_add(out, m.s, v);
    }
    return out;
}

/// gamma_l: K -> q^l K
template <class S>
KPoly<S> gamma_shift(typename S::Context c, int l, const KPoly<S>& p) {
    KPoly<S> out;
    for (const auto& [k, v] : p) kpoly_add(out, k, v * S::qpow(c, l * k));
    return out;
}

template <class S>
KPoly<S> kpoly_mul(const KPoly<S>& a, const KPoly<S>& b) {
    KPoly<S> out;
    for (const auto& [i, u] : a)
        for (const auto& [j, v] : b) kpoly_add(out, i + j, u * v);
    return out;
}

// ------------------------------------------------- root-of-unity elements

/// The preferred generators x, y, z, e, f of Z_0 at q = eps.
struct Z0Generators {
    PBW<Cyclo> x, y, z, zinv, e, f;
};

Z0Generators z0_generators(const CycloField* f);

/// c_j^{+-} = +-(eps^{j+1} + eps^{-j-1})/(eps - eps^{-1})^2
Cyclo casimir_value(const CycloField* f, int j, int sign);

/// prod_{j=0}^{n-1}(Omega - c_j^{sign}) - E^n F^n - (K^n + K^{-n} - sign*2)/(eps - eps^{-1})^{2n}
PBW<Cyclo> center_relation_residual(const CycloField* f, int sign);

/// prod_{j=0}^{r-1}(Omega - (eps^{2j+1}K + eps^{-2j-1}K^{-1})/(eps-eps^{-1})^2) - F^r E^r
PBW<Cyclo> casimir_factor_residual(const CycloField* f, int r);

/// Hopf axioms on one monomial; returns a description of the first failure, if any.
std::optional<std::string> hopf_axiom_failure(const Mono& m);

}  // namespace uqeps
