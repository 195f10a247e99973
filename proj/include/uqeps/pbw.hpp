#pragma once

// Normal-ordered elements of U_q(sl2) in the basis F^t K^s E^r.

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "uqeps/scalar.hpp"

namespace uqeps {

struct Mono {
    int t = 0;  // power of F
    int s = 0;  // power of K
    int r = 0;  // power of E
    auto operator<=>(const Mono&) const = default;
    int degree() const { return r - t; }
};

inline const void* ctx_key(QLaurent::Context) { return nullptr; }
inline const void* ctx_key(const CycloField* f) { return f; }

inline QLaurent::Context join_ctx(QLaurent::Context a, QLaurent::Context) { return a; }
inline const CycloField* join_ctx(const CycloField* a, const CycloField* b) {
    if (a && b && a != b) throw AlgebraError("mixing elements over different fields");
    return a ? a : b;
}

/// Laurent polynomial in K with scalar coefficients.
template <class S>
using KPoly = std::map<int, S>;

template <class S>
void kpoly_add(KPoly<S>& acc, int k, const S& v) {
    auto it = acc.find(k);
    if (it == acc.end()) {
        if (!v.is_zero()) acc.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) acc.erase(it);
}

template <class S>
class PBW {
public:
    using Ctx = typename S::Context;
    using Terms = std::map<Mono, S>;

    PBW() = default;
    explicit PBW(Ctx c) : ctx_(c) {}

    static PBW monomial(Ctx c, Mono m, const S& coeff = S(1L)) {
        PBW out(c);
        out.add_term(m, coeff);
        return out;
    }
    static PBW one(Ctx c) { return monomial(c, {0, 0, 0}); }
    static PBW scalar(Ctx c, const S& v) { return monomial(c, {0, 0, 0}, v); }
    static PBW E(Ctx c, int r = 1) { return monomial(c, {0, 0, r}); }
    static PBW F(Ctx c, int t = 1) { return monomial(c, {t, 0, 0}); }
    static PBW K(Ctx c, int s = 1) { return monomial(c, {0, s, 0}); }
    static PBW from_kpoly(Ctx c, const KPoly<S>& p) {
        PBW out(c);
        for (const auto& [k, v] : p) out.add_term({0, k, 0}, v);
        return out;
    }

    void add_term(const Mono& m, const S& v) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!v.is_zero()) terms_.emplace(m, v);
            return;
        }
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Ctx ctx() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    bool operator==(const PBW& o) const { return terms_ == o.terms_; }

    /// Coefficient of a monomial (zero if absent).
    S coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? S(0L) : it->second;
    }

    /// Degree r - t if homogeneous, otherwise throws.
    int degree() const {
        if (terms_.empty()) return 0;
        int d = terms_.begin()->first.degree();
        for (const auto& kv : terms_)
            if (kv.first.degree() != d) throw AlgebraError("element is not homogeneous");
        return d;
    }

    PBW operator+(const PBW& o) const {
        PBW out = *this;
        out.ctx_ = join_ctx(ctx_, o.ctx_);
        for (const auto& [m, v] : o.terms_) out.add_term(m, v);
        return out;
    }
    PBW operator-() const {
        PBW out = *this;
        for (auto& kv : out.terms_) kv.second = -kv.second;
        return out;
    }
    PBW operator-(const PBW& o) const { return *this + (-o); }
    PBW operator*(const S& v) const {
        PBW out(ctx_);
        if (v.is_zero()) return out;
        for (const auto& [m, c] : terms_) out.add_term(m, c * v);
        return out;
    }
    PBW operator*(const PBW& o) const;
    PBW& operator+=(const PBW& o) { return *this = *this + o; }
    PBW& operator-=(const PBW& o) { return *this = *this - o; }
    PBW& operator*=(const PBW& o) { return *this = *this * o; }

    PBW pow(int k) const {
        PBW acc = one(ctx_), base = *this;
        while (k > 0) {
            if (k & 1) acc *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, v] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << v.str() << ")";
            if (m.t) os << "*F^" << m.t;
            if (m.s) os << "*K^" << m.s;
            if (m.r) os << "*E^" << m.r;
        }
        return os.str();
    }

private:
    Ctx ctx_{};
    Terms terms_;
};

namespace detail {

// For E^r F^c = sum_i F^{c-i} h_i(K) E^{r-i}: the K-Laurent polynomials h_i,
// h_i = [r,i][c,i][i]! prod_{j=1}^{i} [K; i+j-(r+c)],  [K;l] = (K q^l - K^{-1} q^{-l})/(q - q^{-1}).
template <class S>
const std::vector<KPoly<S>>& commutator_polys(typename S::Context ctx, int r, int c) {
    thread_local std::map<std::tuple<const void*, int, int>, std::vector<KPoly<S>>> cache;
    auto key = std::make_tuple(ctx_key(ctx), r, c);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<KPoly<S>> out;
    for (int i = 0; i <= std::min(r, c); ++i) {
        KPoly<S> p;
        p.emplace(0, qbinom<S>(ctx, r, i) * qbinom<S>(ctx, c, i) * qfact<S>(ctx, i) * S::qdiff_inv(ctx, i));
        for (int j = 1; j <= i; ++j) {
            const int l = i + j - (r + c);
            KPoly<S> next;
            for (const auto& [k, v] : p) {
                kpoly_add(next, k + 1, v * S::qpow(ctx, l));
                kpoly_add(next, k - 1, -(v * S::qpow(ctx, -l)));
            }
            p = std::move(next);
        }
        out.push_back(std::move(p));
    }
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace detail

/// (F^t K^s E^r)(F^c K^b E^a) in normal form, with the scalar v multiplied in.
template <class S, class Sink>
void mono_mul(typename S::Context ctx, const Mono& x, const Mono& y, const S& v, Sink&& sink) {
    const auto& hs = detail::commutator_polys<S>(ctx, x.r, y.t);
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) {
        // K^s F^{c-i} = q^{-2s(c-i)} F^{c-i} K^s;  E^{r-i} K^b = q^{-2(r-i)b} K^b E^{r-i}
        const int qexp = -2 * ((x.r - i) * y.s + x.s * (y.t - i));
        const S pre = v * S::qpow(ctx, qexp);
        for (const auto& [k, h] : hs[i]) sink(Mono{x.t + y.t - i, x.s + y.s + k, x.r - i + y.r}, pre * h);
    }
}

template <class S>
PBW<S> PBW<S>::operator*(const PBW<S>& o) const {
    PBW out(join_ctx(ctx_, o.ctx_));
    for (const auto& [m1, v1] : terms_)
        for (const auto& [m2, v2] : o.terms_)
            mono_mul<S>(out.ctx_, m1, m2, v1 * v2, [&](const Mono& m, const S& v) { out.add_term(m, v); });
    return out;
}

template <class S>
PBW<S> operator*(const S& v, const PBW<S>& a) {
    return a * v;
}

// ------------------------------------------------------------- tensors

template <class S, size_t N>
class Tensor {
public:
    using Ctx = typename S::Context;
    using Key = std::array<Mono, N>;

    Tensor() = default;
    explicit Tensor(Ctx c) : ctx_(c) {}

    void add_term(const Key& k, const S& v) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (!v.is_zero()) terms_.emplace(k, v);
            return;
        }
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }

    Ctx ctx() const { return ctx_; }
    const std::map<Key, S>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Tensor& o) const { return terms_ == o.terms_; }

    Tensor operator+(const Tensor& o) const {
        Tensor out = *this;
        for (const auto& [k, v] : o.terms_) out.add_term(k, v);
        return out;
    }
    Tensor operator-() const {
        Tensor out = *this;
        for (auto& kv : out.terms_) kv.second = -kv.second;
        return out;
    }
    Tensor operator-(const Tensor& o) const { return *this + (-o); }

    /// Slotwise product (a1 x ... x aN)(b1 x ... x bN) = a1 b1 x ... x aN bN.
    Tensor operator*(const Tensor& o) const {
        Tensor out(join_ctx(ctx_, o.ctx_));
        for (const auto& [k1, v1] : terms_)
            for (const auto& [k2, v2] : o.terms_) {
                std::vector<std::pair<Key, S>> partial{{Key{}, v1 * v2}};
                for (size_t slot = 0; slot < N; ++slot) {
                    std::vector<std::pair<Key, S>> next;
                    for (const auto& [key, v] : partial)
                        mono_mul<S>(out.ctx_, k1[slot], k2[slot], v, [&](const Mono& m, const S& c) {
                            Key nk = key;
                            nk[slot] = m;
                            next.emplace_back(nk, c);
                        });
                    partial = std::move(next);
                }
                for (const auto& [key, v] : partial) out.add_term(key, v);
            }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, v] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << v.str() << ")";
            for (size_t i = 0; i < N; ++i) os << (i ? " (x) " : " ") << "[" << k[i].t << "," << k[i].s << "," << k[i].r << "]";
        }
        return os.str();
    }

private:
    Ctx ctx_{};
    std::map<Key, S> terms_;
};

template <class S>
Tensor<S, 2> simple_tensor(const PBW<S>& a, const PBW<S>& b) {
    Tensor<S, 2> out(join_ctx(a.ctx(), b.ctx()));
    for (const auto& [m1, v1] : a.terms())
        for (const auto& [m2, v2] : b.terms()) out.add_term({m1, m2}, v1 * v2);
    return out;
}

}  // namespace uqeps
