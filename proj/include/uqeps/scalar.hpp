#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace uqeps {

using Rational = mpq_class;
using cplx = std::complex<double>;

enum class Mode { FormalQ, Cyclotomic };

/// Choice of root of unity: q = exp(2 pi i d / n), plus the arithmetic mode.
struct ScalarContext {
    int n = 3;
    int d = 1;
    Mode mode = Mode::Cyclotomic;

    void validate() const;
    cplx epsilon() const;
};

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Formal mode: Laurent polynomials in q over Q, with (q - q^{-1}) allowed in
// denominators.  A value is  num(q) / (q - q^{-1})^den  and is kept reduced,
// so equal values have equal representations.
// ---------------------------------------------------------------------------
class QLaurent {
public:
    struct Context {
        bool operator==(const Context&) const = default;
    };

    QLaurent() = default;
    QLaurent(long v);  // NOLINT(google-explicit-constructor)
    QLaurent(const Rational& v);  // NOLINT(google-explicit-constructor)

    static QLaurent qpow(Context, int k);
    static QLaurent from_rational(Context, const Rational& r) { return QLaurent(r); }
    /// (q - q^{-1})^{-k}
    static QLaurent qdiff_inv(Context, int k);

    bool is_zero() const { return num_.empty(); }
    bool operator==(const QLaurent& o) const { return den_ == o.den_ && num_ == o.num_; }

    QLaurent operator+(const QLaurent& o) const;
    QLaurent operator-(const QLaurent& o) const;
    QLaurent operator-() const;
    QLaurent operator*(const QLaurent& o) const;
    QLaurent& operator+=(const QLaurent& o) { return *this = *this + o; }
    QLaurent& operator-=(const QLaurent& o) { return *this = *this - o; }
    QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

    /// Exact inverse; only monomials c q^k (times powers of q - q^{-1}) are units.
    QLaurent inverse() const;

    cplx eval(cplx q) const;
    std::string str() const;

    const std::map<int, Rational>& numerator() const { return num_; }
    int den() const { return den_; }

private:
    std::map<int, Rational> num_;
    int den_ = 0;
    void normalize();
};

// ---------------------------------------------------------------------------
// Cyclotomic mode: Q(eps) = Q[t]/Phi_n(t).
// ---------------------------------------------------------------------------
struct CycloField {
    int n;
    int d;
    int deg;                   // phi(n)
    std::vector<Rational> phi; // monic, size deg+1
    std::vector<cplx> powers;  // eps^k for k < n
    /// Interned per (n, d); never freed.
    static const CycloField* get(int n, int d);
};

class Cyclo {
public:
    using Context = const CycloField*;

    Cyclo() = default;
    Cyclo(long v);  // NOLINT(google-explicit-constructor)
    Cyclo(const Rational& v);  // NOLINT(google-explicit-constructor)
    Cyclo(Context f, std::vector<Rational> coeffs);

    static Cyclo qpow(Context f, int k);
    static Cyclo from_rational(Context f, const Rational& r);
    static Cyclo qdiff_inv(Context f, int k);

    bool is_zero() const;
    bool operator==(const Cyclo& o) const;

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

    Cyclo inverse() const;
    Cyclo pow(int k) const;

    cplx eval() const;
    std::string str() const;

    Context field() const { return f_; }
    const std::vector<Rational>& coeffs() const { return c_; }

private:
    Context f_ = nullptr;  // null: plain rational stored in c_[0]
    std::vector<Rational> c_;
    void trim();
    static Context join(Context a, Context b);
};

/// Image of a formal scalar under q -> eps.
Cyclo specialize(const QLaurent& a, const CycloField* f);

// q-integers and friends, computed division-free.
template <class S>
S qint(typename S::Context ctx, int l) {
    if (l < 0) return -qint<S>(ctx, -l);
    S acc(0L);
    for (int k = 0; k < l; ++k) acc += S::qpow(ctx, l - 1 - 2 * k);
    return acc;
}

template <class S>
S qfact(typename S::Context ctx, int l) {
    if (l < 0) throw AlgebraError("qfact: negative argument");
    S acc(1L);
    for (int k = 2; k <= l; ++k) acc *= qint<S>(ctx, k);
    return acc;
}

/// Gaussian binomial [l, m] via the Pascal-type recursion.
template <class S>
S qbinom(typename S::Context ctx, int l, int m) {
    if (m < 0) return S(0L);
    if (m == 0) return S(1L);
    if (l < 0) {
        S v = qbinom<S>(ctx, m - l - 1, m);
        return (m % 2) ? -v : v;
    }
    if (m > l) return S(0L);
    // rows[k][j] = [k, j]
    std::vector<std::vector<S>> rows(l + 1);
    rows[0] = {S(1L)};
    for (int k = 1; k <= l; ++k) {
        rows[k].assign(k + 1, S(0L));
        rows[k][0] = S(1L);
        rows[k][k] = S(1L);
        for (int j = 1; j < k; ++j)
            rows[k][j] = S::qpow(ctx, j) * rows[k - 1][j] + S::qpow(ctx, -(k - j)) * rows[k - 1][j - 1];
    }
    return rows[l][m];
}

}  // namespace uqeps
