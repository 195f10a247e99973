#include "uqeps/scalar.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace uqeps {

void ScalarContext::validate() const {
    if (n < 3 || n % 2 == 0) throw AlgebraError("n must be odd and >= 3");
    if (std::gcd(d, n) != 1) throw AlgebraError("d must be coprime to n");
}

cplx ScalarContext::epsilon() const { return std::polar(1.0, 2.0 * M_PI * d / n); }

// ----------------------------------------------------------------- QLaurent

namespace {

using LPoly = std::map<int, Rational>;

void add_into(LPoly& a, const LPoly& b, const Rational& scale = 1) {
    for (const auto& [k, v] : b) {
        Rational& slot = a[k];
        slot += scale * v;
        if (slot == 0) a.erase(k);
    }
}

LPoly mul(const LPoly& a, const LPoly& b) {
    LPoly out;
    for (const auto& [i, u] : a)
        for (const auto& [j, v] : b) {
            Rational& slot = out[i + j];
            slot += u * v;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

// (q - q^{-1})^m
LPoly qdiff_pow(int m) {
    LPoly out{{0, 1}};
    const LPoly base{{1, 1}, {-1, -1}};
    for (int i = 0; i < m; ++i) out = mul(out, base);
    return out;
}

// Divide p by (q - q^{-1}) if exact; returns false otherwise.
bool try_divide_qdiff(LPoly& p) {
    if (p.empty()) return true;
    Rational at1 = 0, atm1 = 0;
    for (const auto& [k, v] : p) {
        at1 += v;
        atm1 += (k % 2 == 0) ? v : Rational(-v);
    }
    if (at1 != 0 || atm1 != 0) return false;
    // p = q^lo * a(q), a polynomial; p / (q - q^{-1}) = q^{lo+1} * a(q)/(q^2 - 1)
    const int lo = p.begin()->first;
    const int hi = p.rbegin()->first;
    const int deg = hi - lo;
    std::vector<Rational> a(deg + 1);
    for (const auto& [k, v] : p) a[k - lo] = v;
    std::vector<Rational> b(deg - 1);
    for (int k = deg; k >= 2; --k) {
        b[k - 2] = a[k];
        a[k - 2] += a[k];
    }
    LPoly out;
    for (int k = 0; k + 2 <= deg; ++k)
        if (b[k] != 0) out[k + lo + 1] = b[k];
    p = std::move(out);
    return true;
}

}  // namespace

QLaurent::QLaurent(long v) {
    if (v != 0) num_[0] = v;
}

QLaurent::QLaurent(const Rational& v) {
    if (v != 0) num_[0] = v;
}

QLaurent QLaurent::qpow(Context, int k) {
    QLaurent r;
    r.num_[k] = 1;
    return r;
}

QLaurent QLaurent::qdiff_inv(Context, int k) {
    QLaurent r(1L);
    r.den_ = k;
    return r;
}

void QLaurent::normalize() {
    std::erase_if(num_, [](const auto& kv) { return kv.second == 0; });
    if (num_.empty()) {
        den_ = 0;
        return;
    }
    while (den_ > 0 && try_divide_qdiff(num_)) --den_;
    if (den_ < 0) {
        num_ = mul(num_, qdiff_pow(-den_));
        den_ = 0;
    }
}

QLaurent QLaurent::operator+(const QLaurent& o) const {
    QLaurent r;
    r.den_ = std::max(den_, o.den_);
    r.num_ = den_ < r.den_ ? mul(num_, qdiff_pow(r.den_ - den_)) : num_;
    add_into(r.num_, o.den_ < r.den_ ? mul(o.num_, qdiff_pow(r.den_ - o.den_)) : o.num_);
    r.normalize();
    return r;
}

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (auto& kv : r.num_) kv.second = -kv.second;
    return r;
}

QLaurent QLaurent::operator-(const QLaurent& o) const { return *this + (-o); }

QLaurent QLaurent::operator*(const QLaurent& o) const {
    QLaurent r;
    if (is_zero() || o.is_zero()) return r;
    r.num_ = mul(num_, o.num_);
    r.den_ = den_ + o.den_;
    r.normalize();
    return r;
}

QLaurent QLaurent::inverse() const {
    if (num_.size() != 1) throw AlgebraError("QLaurent: element is not a unit in formal mode");
    const auto& [k, v] = *num_.begin();
    QLaurent r;
    r.num_[-k] = 1 / v;
    r.den_ = -den_;
    r.normalize();
    return r;
}

cplx QLaurent::eval(cplx q) const {
    cplx acc = 0;
    for (const auto& [k, v] : num_) acc += v.get_d() * std::pow(q, k);
    return acc / std::pow(q - 1.0 / q, den_);
}

std::string QLaurent::str() const {
    if (num_.empty()) return "0";
    std::ostringstream os;
    if (den_ > 0) os << "(";
    bool first = true;
    for (const auto& [k, v] : num_) {
        if (!first) os << " + ";
        first = false;
        os << v.get_str();
        if (k != 0) os << "*q^" << k;
    }
    if (den_ > 0) os << ")/(q-q^-1)^" << den_;
    return os.str();
}

// -------------------------------------------------------------- CycloField

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly pmul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    ptrim(out);
    return out;
}

// a = q*b + r
void pdivmod(Poly a, const Poly& b, Poly& q, Poly& r) {
    ptrim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        const size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        ptrim(a);
    }
    ptrim(q);
    r = std::move(a);
}

Poly psub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    ptrim(out);
    return out;
}

Poly cyclotomic(int n) {
    Poly num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        Poly q, r;
        pdivmod(num, cyclotomic(d), q, r);
        num = q;
    }
    return num;
}

}  // namespace

const CycloField* CycloField::get(int n, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<CycloField>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{n, d}];
    if (!slot) {
        ScalarContext{n, d, Mode::Cyclotomic}.validate();
        auto f = std::make_unique<CycloField>();
        f->n = n;
        f->d = d;
        f->phi = cyclotomic(n);
        f->deg = static_cast<int>(f->phi.size()) - 1;
        for (int k = 0; k < n; ++k) f->powers.push_back(std::polar(1.0, 2.0 * M_PI * d * k / n));
        slot = std::move(f);
    }
    return slot.get();
}

// ------------------------------------------------------------------- Cyclo

Cyclo::Cyclo(long v) : c_{Rational(v)} { trim(); }
Cyclo::Cyclo(const Rational& v) : c_{v} { trim(); }
Cyclo::Cyclo(Context f, std::vector<Rational> coeffs) : f_(f), c_(std::move(coeffs)) {
    if (f_ && static_cast<int>(c_.size()) > f_->deg) {
        Poly q, r;
        pdivmod(c_, f_->phi, q, r);
        c_ = std::move(r);
    }
    trim();
}

void Cyclo::trim() { ptrim(c_); }

Cyclo::Context Cyclo::join(Context a, Context b) {
    if (a && b && a != b) throw AlgebraError("Cyclo: mixing different cyclotomic fields");
    return a ? a : b;
}

Cyclo Cyclo::qpow(Context f, int k) {
    if (!f) throw AlgebraError("Cyclo: q power needs a field");
    int e = ((k % f->n) + f->n) % f->n;
    Poly p(e + 1);
    p[e] = 1;
    return Cyclo(f, std::move(p));
}

Cyclo Cyclo::from_rational(Context f, const Rational& r) { return Cyclo(f, {r}); }

Cyclo Cyclo::qdiff_inv(Context f, int k) {
    Cyclo base = (qpow(f, 1) - qpow(f, -1)).inverse();
    return base.pow(k);
}

bool Cyclo::is_zero() const { return c_.empty(); }

bool Cyclo::operator==(const Cyclo& o) const { return c_ == o.c_; }

Cyclo Cyclo::operator+(const Cyclo& o) const {
    Poly out(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return Cyclo(join(f_, o.f_), std::move(out));
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    return Cyclo(join(f_, o.f_), pmul(c_, o.c_));
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw AlgebraError("Cyclo: division by zero");
    if (c_.size() == 1) return Cyclo(f_, {1 / c_[0]});
    // extended Euclid: s*a + t*phi = g (constant)
    Poly r0 = f_->phi, r1 = c_;
    Poly s0{}, s1{Rational(1)};
    while (r1.size() > 1) {
        Poly q, r;
        pdivmod(r0, r1, q, r);
        Poly s = psub(s0, pmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.empty()) throw AlgebraError("Cyclo: element not invertible");
    Rational g = r1[0];
    for (auto& v : s1) v /= g;
    return Cyclo(f_, std::move(s1));
}

Cyclo Cyclo::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Cyclo acc(f_, {Rational(1)}), base = *this;
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

cplx Cyclo::eval() const {
    if (c_.empty()) return 0;
    if (!f_) return c_[0].get_d();
    cplx acc = 0;
    for (size_t k = 0; k < c_.size(); ++k) acc += c_[k].get_d() * f_->powers[k];
    return acc;
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[k].get_str();
        if (k) os << "*e^" << k;
    }
    return os.str();
}

Cyclo specialize(const QLaurent& a, const CycloField* f) {
    Cyclo acc(f, {});
    for (const auto& [k, v] : a.numerator()) acc += Cyclo::qpow(f, k) * Cyclo::from_rational(f, v);
    if (a.den() > 0) acc *= Cyclo::qdiff_inv(f, a.den());
    return acc;
}

}  // namespace uqeps
