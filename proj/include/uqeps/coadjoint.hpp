#pragma once

#include <array>
#include <map>
#include <string>

#include "uqeps/geometry.hpp"
#include "uqeps/modrep.hpp"
#include "uqeps/pbw.hpp"

namespace uqeps {

enum class Gen { e, f, z };

Gen parse_gen(const std::string& s);

/// D_e, D_f or D_z applied to an element of U_eps.
PBW<Cyclo> derive(Gen g, const PBW<Cyclo>& u);

/// lim_{q -> eps} [a, u] / (n (q^n - q^{-n})) computed from formal-q elements by l'Hopital on each
/// coefficient. Throws if some coefficient of [a, u] does not vanish at eps.
PBW<Cyclo> derivation_limit(const PBW<QLaurent>& a, const PBW<QLaurent>& u, const CycloField* f);

/// Formal lifts of e, f, z.
PBW<QLaurent> formal_lift(Gen g, int n);

// ------------------------------------------------ Poisson polynomials

/// Polynomial in x, y, z, z^{-1} with rational coefficients; keys are (i, j, k) for x^i y^j z^k.
class ZPoly {
public:
    using Key = std::array<int, 3>;

    ZPoly() = default;
    ZPoly(long c);  // NOLINT(google-explicit-constructor)
    static ZPoly monomial(int i, int j, int k, const Rational& c = 1);
    static ZPoly x() { return monomial(1, 0, 0); }
    static ZPoly y() { return monomial(0, 1, 0); }
    static ZPoly z(int k = 1) { return monomial(0, 0, k); }
    /// e = -xz, f = -yz
    static ZPoly e() { return monomial(1, 0, 1, -1); }
    static ZPoly f() { return monomial(0, 1, 1, -1); }
    static ZPoly of(Gen g);

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator-() const;
    ZPoly operator*(const ZPoly& o) const;
    bool operator==(const ZPoly& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Partial derivative in variable v (0 = x, 1 = y, 2 = z).
    ZPoly diff(int v) const;
    cplx eval(const Z0Character& g) const;
    std::string str() const;
    const std::map<Key, Rational>& terms() const { return terms_; }

private:
    std::map<Key, Rational> terms_;
    void add(const Key& k, const Rational& c);
};

/// The bracket of Spec(Z_0): {z,x} = zx, {z,y} = -yz, {y,x} = 1 - xy - z^{-2}, Leibniz in each slot.
ZPoly poisson(const ZPoly& u, const ZPoly& v);

/// x^i y^j z^k as the corresponding central element of U_eps.
PBW<Cyclo> to_pbw(const ZPoly& p, const CycloField* f);

// ------------------------------------------------ flows and twists

class FlowError : public std::runtime_error {
public:
    FlowError(const std::string& what, cplx reached) : std::runtime_error(what), reached_time(reached) {}
    cplx reached_time;
};

struct FlowResult {
    Z0Character end;
    int steps = 0;
    double invariant_drift = 0;  // change of z + 1/z - xyz along the path
};

/// Integrate d/ds g = t {a, g}, s in [0, 1], adaptive RK4 with local error <= tol.
FlowResult flow_character(Gen a, cplx t, const Z0Character& g, int initial_steps = 16, double tol = 1e-10);

/// Value of e = -xz, f = -yz or z at a character.
cplx generator_value(Gen a, const Z0Character& g);

/// rep composed with exp(t D_a), returned as a derived module.
ModuleRep twist_module(Gen a, cplx t, const ModuleRep& rep);

struct LiftResiduals {
    int symbolic_terms_e = 0;    // terms of D_e M - [[0,0],[z,0]], M], expected 0
    int symbolic_terms_f = 0;    // D_f M = -z [e_, M]
    int symbolic_terms_z = 0;    // D_z M = (z/2) [h, M]
    int symbolic_terms_bracket = 0;  // [D_e, D_f] M vs (z^2 h_ - z^2 x e_ + z^2 y f_) M with h_ = [e_, f_]
    /// Same with h_ replaced by M -> [h, M]. Nonzero: a -> [a, M] reverses brackets, so [e_, f_] = -ad(h) there.
    int symbolic_terms_bracket_ad = 0;
    double numeric = 0;          // e, f, z and the h_ = [e_, f_] bracket at the given point, max abs
};

LiftResiduals vector_field_lift_check(const Z0Character& g);

/// Delta(D_e(u)) - (D_e x 1 + z x D_e - D_z x zx) Delta(u); true iff zero.
/// With with_inner_terms, the right side also gets sum_{0<i<n} c_i [K^{n-i}E^i x E^{n-i}, Delta(u)],
/// c_i = (eps-eps^{-1})^{n-1} eps^{-i(n-i)} [n-1]! / (n [i]! [n-i]!), the limit of the middle terms of
/// Delta(e~) divided by n(q^n - q^{-n}).
bool coproduct_derivation_check(const PBW<Cyclo>& u, bool with_inner_terms = false);

}  // namespace uqeps
