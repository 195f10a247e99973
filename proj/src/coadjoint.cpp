#include "uqeps/coadjoint.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <tuple>

#include "uqeps/qalgebra.hpp"

namespace uqeps {

Gen parse_gen(const std::string& s) {
    if (s == "e") return Gen::e;
    if (s == "f") return Gen::f;
    if (s == "z") return Gen::z;
    throw std::invalid_argument("unknown generator '" + s + "' (expected e, f or z)");
}

// ---------------------------------------------------------------- derive

namespace {

using P = PBW<Cyclo>;

Cyclo qdiff(const CycloField* f) { return Cyclo::qpow(f, 1) - Cyclo::qpow(f, -1); }

// values on E, F, K, K^{-1}
std::array<P, 4> generator_images(Gen g, const CycloField* f) {
    const int n = f->n;
    const Cyclo inv_n(Rational(1, n));
    const Cyclo qd = qdiff(f);
    if (g == Gen::e) {
        // [K;1] E^{n-1}
        P kb(f);
        kb.add_term({0, 1, 0}, Cyclo::qpow(f, 1) * Cyclo::qdiff_inv(f, 1));
        kb.add_term({0, -1, 0}, -Cyclo::qpow(f, -1) * Cyclo::qdiff_inv(f, 1));
        const Cyclo c = qd.pow(n) * inv_n;
        return {P(f), kb * P::E(f, n - 1) * (qd.pow(n - 1) * inv_n), P::monomial(f, {0, 1, n}, -c),
                P::monomial(f, {0, -1, n}, c)};
    }
    if (g == Gen::z)
        return {P::monomial(f, {0, n, 1}, inv_n), P::F(f) * P::K(f, n) * (-inv_n), P(f), P(f)};
    throw AlgebraError("generator_images: D_f is obtained by conjugation");
}

P derive_mono(Gen g, const CycloField* f, const Mono& m, const std::array<P, 4>& img) {
    P out(f);
    for (int i = 0; i < m.t; ++i)
        out += P::F(f, i) * img[1] * P::monomial(f, {m.t - 1 - i, m.s, m.r});
    if (m.s != 0) {
        const int a = std::abs(m.s);
        const P& dk = m.s > 0 ? img[2] : img[3];
        const int step = m.s > 0 ? 1 : -1;
        P dks(f);
        for (int i = 0; i < a; ++i) dks += P::K(f, step * i) * dk * P::K(f, step * (a - 1 - i));
        out += P::F(f, m.t) * dks * P::E(f, m.r);
    }
    for (int j = 0; j < m.r; ++j) out += P::monomial(f, {m.t, m.s, j}) * img[0] * P::E(f, m.r - 1 - j);
    (void)g;
    return out;
}

P derive_direct(Gen g, const P& u) {
    const CycloField* f = u.ctx();
    if (!f) throw AlgebraError("derive: element has no root of unity attached");
    using CacheKey = std::tuple<const CycloField*, int, Mono>;
    thread_local std::map<CacheKey, P> cache;
    const auto img = generator_images(g, f);
    P out(f);
    for (const auto& [m, v] : u.terms()) {
        const CacheKey key{f, static_cast<int>(g), m};
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, derive_mono(g, f, m, img)).first;
        out += it->second * v;
    }
    return out;
}

}  // namespace

PBW<Cyclo> derive(Gen g, const PBW<Cyclo>& u) {
    if (g == Gen::f) return braid_T(derive_direct(Gen::e, braid_T_inv(u)));
    return derive_direct(g, u);
}

PBW<Cyclo> derivation_limit(const PBW<QLaurent>& a, const PBW<QLaurent>& u, const CycloField* f) {
    using L = QLaurent;
    const PBW<L> c = a * u - u * a;
    const int n = f->n;
    // d/dq [n (q^n - q^{-n})] at eps is 2 n^2 eps^{-1}
    const Cyclo scale = Cyclo::qpow(f, 1) * Cyclo(Rational(1, 2 * n * n));
    P out(f);
    for (const auto& [m, v] : c.terms()) {
        if (!specialize(v, f).is_zero()) throw AlgebraError("derivation_limit: commutator does not vanish at eps");
        L dnum(0L);
        for (const auto& [k, r] : v.numerator())
            if (k != 0) dnum += L::qpow({}, k - 1) * L(r * k);
        out.add_term(m, specialize(dnum * L::qdiff_inv({}, v.den()), f) * scale);
    }
    return out;
}

PBW<QLaurent> formal_lift(Gen g, int n) {
    using L = QLaurent;
    const L::Context c{};
    L qdn(1L);
    for (int i = 0; i < n; ++i) qdn *= L::qpow(c, 1) - L::qpow(c, -1);
    switch (g) {
        case Gen::e: return PBW<L>::monomial(c, {0, 0, n}, qdn);
        case Gen::f: return PBW<L>::monomial(c, {n, n, 0}, -qdn);
        case Gen::z: return PBW<L>::K(c, n);
    }
    return PBW<L>(c);
}

// ---------------------------------------------------------------- ZPoly

ZPoly::ZPoly(long c) {
    if (c != 0) terms_[{0, 0, 0}] = c;
}

ZPoly ZPoly::monomial(int i, int j, int k, const Rational& c) {
    ZPoly out;
    out.add({i, j, k}, c);
    return out;
}

ZPoly ZPoly::of(Gen g) {
    switch (g) {
        case Gen::e: return e();
        case Gen::f: return f();
        case Gen::z: return z();
    }
    return {};
}

void ZPoly::add(const Key& k, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    ZPoly out = *this;
    for (const auto& [k, c] : o.terms_) out.add(k, c);
    return out;
}

ZPoly ZPoly::operator-() const {
    ZPoly out = *this;
    for (auto& kv : out.terms_) kv.second = -kv.second;
    return out;
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
    ZPoly out;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) out.add({k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}, c1 * c2);
    return out;
}

ZPoly ZPoly::diff(int v) const {
    ZPoly out;
    for (const auto& [k, c] : terms_) {
        if (k[v] == 0) continue;
        Key nk = k;
        --nk[v];
        out.add(nk, c * k[v]);
    }
    return out;
}

cplx ZPoly::eval(const Z0Character& g) const {
    cplx acc = 0;
    for (const auto& [k, c] : terms_)
        acc += c.get_d() * std::pow(g.x, k[0]) * std::pow(g.y, k[1]) * std::pow(g.z, k[2]);
    return acc;
}

std::string ZPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.get_str() << ")";
        const char* names[3] = {"x", "y", "z"};
        for (int v = 0; v < 3; ++v)
            if (k[v] != 0) os << "*" << names[v] << "^" << k[v];
    }
    return os.str();
}

ZPoly poisson(const ZPoly& u, const ZPoly& v) {
    // {a_i, a_j} for a = (x, y, z)
    const ZPoly xy = ZPoly::monomial(1, 1, 0) + ZPoly::z(-2) - ZPoly(1L);
    const ZPoly zx = ZPoly::monomial(1, 0, 1);
    const ZPoly zy = -ZPoly::monomial(0, 1, 1);
    const ZPoly table[3][3] = {{ZPoly(), xy, -zx}, {-xy, ZPoly(), -zy}, {zx, zy, ZPoly()}};
    const ZPoly du[3] = {u.diff(0), u.diff(1), u.diff(2)};
    const ZPoly dv[3] = {v.diff(0), v.diff(1), v.diff(2)};
    ZPoly out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && !du[i].is_zero() && !dv[j].is_zero()) out = out + du[i] * dv[j] * table[i][j];
    return out;
}

PBW<Cyclo> to_pbw(const ZPoly& p, const CycloField* f) {
    const Z0Generators g = z0_generators(f);
    P out(f);
    for (const auto& [k, c] : p.terms()) {
        P term = P::scalar(f, Cyclo::from_rational(f, c));
        term *= g.x.pow(k[0]);
        term *= g.y.pow(k[1]);
        term *= k[2] >= 0 ? g.z.pow(k[2]) : g.zinv.pow(-k[2]);
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------- flows

namespace {

using State = std::array<cplx, 3>;

struct VectorField {
    ZPoly comp[3];
    explicit VectorField(Gen a) {
        const ZPoly h = ZPoly::of(a);
        comp[0] = poisson(h, ZPoly::x());
        comp[1] = poisson(h, ZPoly::y());
        comp[2] = poisson(h, ZPoly::z());
    }
    State operator()(const State& s, cplx t) const {
        const Z0Character g{s[0], s[1], s[2]};
        return {t * comp[0].eval(g), t * comp[1].eval(g), t * comp[2].eval(g)};
    }
};

State axpy(const State& a, cplx h, const State& b) { return {a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]}; }

State rk4(const VectorField& vf, cplx t, const State& s, double h) {
    const State k1 = vf(s, t);
    const State k2 = vf(axpy(s, h / 2, k1), t);
    const State k3 = vf(axpy(s, h / 2, k2), t);
    const State k4 = vf(axpy(s, h, k3), t);
    State out = s;
    for (int i = 0; i < 3; ++i) out[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

cplx trace_invariant(const State& s) { return s[2] + 1.0 / s[2] - s[0] * s[1] * s[2]; }

}  // namespace

FlowResult flow_character(Gen a, cplx t, const Z0Character& g, int initial_steps, double tol) {
    const VectorField vf(a);
    State s{g.x, g.y, g.z};
    const cplx inv0 = trace_invariant(s);
    FlowResult res;
    double pos = 0, h = 1.0 / std::max(1, initial_steps);
    while (pos < 1.0) {
        h = std::min(h, 1.0 - pos);
        const State big = rk4(vf, t, s, h);
        const State half = rk4(vf, t, rk4(vf, t, s, h / 2), h / 2);
        double err = 0, scale = 1;
        for (int i = 0; i < 3; ++i) {
            err = std::max(err, std::abs(big[i] - half[i]));
            scale = std::max(scale, std::abs(half[i]));
        }
        err /= 15.0;
        if (!std::isfinite(err) || std::abs(half[2]) < 1e-300 || scale > 1e150)
            throw FlowError("flow blew up", pos * t);
        if (err > tol * scale) {
            h /= 2;
            if (h < 1e-14) throw FlowError("flow step size underflow", pos * t);
            continue;
        }
        // Richardson correction for the accepted step
        for (int i = 0; i < 3; ++i) s[i] = half[i] + (half[i] - big[i]) / 15.0;
        pos += h;
        ++res.steps;
        if (err < tol * scale / 64) h *= 2;
    }
    res.end = {s[0], s[1], s[2]};
    res.invariant_drift = std::abs(trace_invariant(s) - inv0);
    return res;
}

namespace {

cplx scalar_action(const Mat& m) { return m.trace() / static_cast<double>(m.rows()); }

// (exp(s e) - 1)/e, with the limit s at e = 0
cplx expm1_over(cplx s, cplx e) {
    if (std::abs(s * e) < 1e-8) return s * (1.0 + s * e / 2.0 + s * s * e * e / 6.0);
    return (std::exp(s * e) - 1.0) / e;
}

ModuleRep twist_e(cplx t, const ModuleRep& rep) {
    const int n = rep.n;
    const cplx eps = rep.epsilon();
    const cplx qd = eps - 1.0 / eps;
    Mat En = Mat::Identity(rep.dim, rep.dim);
    for (int i = 0; i < n; ++i) En = En * rep.E;
    const cplx e = std::pow(qd, n) * scalar_action(En);
    const Mat Kinv = rep.K.inverse();
    ModuleRep out = rep;
    const cplx s = t / double(n);
    out.K = std::exp(-s * e) * rep.K;
    Mat En1 = Mat::Identity(rep.dim, rep.dim);
    for (int i = 0; i < n - 1; ++i) En1 = En1 * rep.E;
    out.F = rep.F - std::pow(qd, n - 2) * (expm1_over(-s, e) * rep.K * eps + expm1_over(s, e) * Kinv / eps) * En1;
    return out;
}

// rho o T and rho o T^{-1} on generators
ModuleRep compose_T(const ModuleRep& rep) {
    ModuleRep out = rep;
    const Mat Kinv = rep.K.inverse();
    out.E = -(rep.F * rep.K);
    out.F = -(Kinv * rep.E);
    out.K = Kinv;
    return out;
}

ModuleRep compose_T_inv(const ModuleRep& rep) {
    ModuleRep out = rep;
    const Mat Kinv = rep.K.inverse();
    out.E = -(Kinv * rep.F);
    out.F = -(rep.E * rep.K);
    out.K = Kinv;
    return out;
}

}  // namespace

cplx generator_value(Gen a, const Z0Character& g) { return ZPoly::of(a).eval(g); }

ModuleRep twist_module(Gen a, cplx t, const ModuleRep& rep) {
    ModuleRep out;
    switch (a) {
        case Gen::e: out = twist_e(t, rep); break;
        case Gen::f: out = compose_T_inv(twist_e(t, compose_T(rep))); break;
        case Gen::z: {
            Mat Kn = Mat::Identity(rep.dim, rep.dim);
            for (int i = 0; i < rep.n; ++i) Kn = Kn * rep.K;
            const cplx z = scalar_action(Kn);
            out = rep;
            out.E = std::exp(t * z / double(rep.n)) * rep.E;
            out.F = std::exp(-t * z / double(rep.n)) * rep.F;
            break;
        }
    }
    out.spec = DerivedSpec{"twist"};
    return out;
}

// ---------------------------------------------------------------- lift

namespace {

using PMat = std::array<std::array<ZPoly, 2>, 2>;

PMat pmul(const PMat& a, const PMat& b) {
    PMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return out;
}

PMat psub(const PMat& a, const PMat& b) {
    PMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = a[i][j] - b[i][j];
    return out;
}

PMat pscale(const ZPoly& c, const PMat& a) {
    PMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = c * a[i][j];
    return out;
}

PMat bracket(const PMat& a, const PMat& m) { return psub(pmul(a, m), pmul(m, a)); }

template <class Fn>
PMat entrywise(const PMat& m, Fn&& fn) {
    PMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = fn(m[i][j]);
    return out;
}

int count_terms(const PMat& m) {
    int c = 0;
    for (const auto& row : m)
        for (const auto& p : row) c += static_cast<int>(p.terms().size());
    return c;
}

double eval_max(const PMat& m, const Z0Character& g) {
    double r = 0;
    for (const auto& row : m)
        for (const auto& p : row) r = std::max(r, std::abs(p.eval(g)));
    return r;
}

}  // namespace

LiftResiduals vector_field_lift_check(const Z0Character& g) {
    const ZPoly x = ZPoly::x(), y = ZPoly::y(), z = ZPoly::z();
    const ZPoly zero;
    const PMat M{{{z, -(z * x)}, {z * y, -(z * x * y) + ZPoly::z(-1)}}};
    const PMat e_{{{zero, ZPoly(1L)}, {zero, zero}}};
    const PMat f_{{{zero, zero}, {ZPoly(1L), zero}}};
    const PMat h_{{{ZPoly(1L), zero}, {zero, ZPoly(-1L)}}};
    auto D = [&](Gen a, const PMat& m) { return entrywise(m, [&](const ZPoly& p) { return poisson(ZPoly::of(a), p); }); };

    const PMat re = psub(D(Gen::e, M), bracket(pscale(z, f_), M));
    const PMat rf = psub(D(Gen::f, M), bracket(pscale(-z, e_), M));
    const PMat rz = psub(D(Gen::z, M), bracket(pscale(z * ZPoly::monomial(0, 0, 0, Rational(1, 2)), h_), M));
    const PMat lhs = psub(D(Gen::e, D(Gen::f, M)), D(Gen::f, D(Gen::e, M)));
    const ZPoly z2 = ZPoly::z(2);
    const PMat tail = psub(pscale(-(z2 * y), bracket(f_, M)), pscale(-(z2 * x), bracket(e_, M)));
    // h_ realized as ad(h), the same realization used for D_z
    const PMat rb_ad = psub(lhs, psub(pscale(z2, bracket(h_, M)), tail));
    // h_ as the bracket of the lifted fields e_ = -D_f/z, f_ = D_e/z acting as derivations
    auto ef = [&](const PMat& m) {
        const ZPoly zi = ZPoly::z(-1);
        auto el = [&](const PMat& a) { return entrywise(a, [&](const ZPoly& p) { return -(zi * poisson(ZPoly::f(), p)); }); };
        auto fl = [&](const PMat& a) { return entrywise(a, [&](const ZPoly& p) { return zi * poisson(ZPoly::e(), p); }); };
        return psub(el(fl(m)), fl(el(m)));
    };
    const PMat rb = psub(lhs, psub(pscale(z2, ef(M)), tail));

    LiftResiduals res;
    res.symbolic_terms_e = count_terms(re);
    res.symbolic_terms_f = count_terms(rf);
    res.symbolic_terms_z = count_terms(rz);
    res.symbolic_terms_bracket = count_terms(rb);
    res.symbolic_terms_bracket_ad = count_terms(rb_ad);
    res.numeric = std::max({eval_max(re, g), eval_max(rf, g), eval_max(rz, g), eval_max(rb, g)});
    return res;
}

// ---------------------------------------------------------------- coproduct

bool coproduct_derivation_check(const PBW<Cyclo>& u, bool with_inner_terms) {
    const CycloField* f = u.ctx();
    if (!f) throw AlgebraError("coproduct_derivation_check needs a cyclotomic element");
    const Z0Generators g = z0_generators(f);
    const P zx = g.z * g.x;
    const auto du = coproduct(u);
    const auto lhs = coproduct(derive(Gen::e, u));
    auto id = [](const P& a) { return a; };
    auto De = [](const P& a) { return derive(Gen::e, a); };
    auto Dz = [](const P& a) { return derive(Gen::z, a); };
    auto zmul = [&](const P& a) { return g.z * a; };
    auto zxmul = [&](const P& a) { return zx * a; };
    auto rhs = map_slots(du, De, id) + map_slots(du, zmul, De) - map_slots(du, Dz, zxmul);
    if (with_inner_terms) {
        const int n = f->n;
        const Cyclo qd = qdiff(f);
        Tensor<Cyclo, 2> mid(f);
        for (int i = 1; i < n; ++i) {
            const Cyclo c = qd.pow(n - 1) * Cyclo::qpow(f, -i * (n - i)) * qfact<Cyclo>(f, n - 1) *
                            (Cyclo(long(n)) * qfact<Cyclo>(f, i) * qfact<Cyclo>(f, n - i)).inverse();
            mid.add_term({Mono{0, n - i, i}, Mono{0, 0, n - i}}, c);
        }
        rhs = rhs + (mid * du - du * mid);
    }
    return (lhs - rhs).is_zero();
}

}  // namespace uqeps
