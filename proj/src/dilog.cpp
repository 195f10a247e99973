#include "uqeps/dilog.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "uqeps/geometry.hpp"

namespace uqeps {

namespace {

constexpr double kPi = M_PI;
const cplx I1{0.0, 1.0};

cplx zeta(int n, long k) { return std::polar(1.0, 2.0 * kPi * static_cast<double>(((k % n) + n) % n) / n); }

int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }

cplx nth_root(cplx x, int n) { return x == 0.0 ? 0.0 : std::exp(std::log(x) / static_cast<double>(n)); }

// Local edge pairs carrying w_0, w_1, w_2: {01, 23}, {12, 03}, {02, 13}.
int edge_modulus(int a, int b) {
    if (a > b) std::swap(a, b);
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 0;
    if ((a == 1 && b == 2) || (a == 0 && b == 3)) return 1;
    return 2;
}

double rel_max(const std::vector<cplx>& a, const std::vector<cplx>& b, cplx s = 1.0) {
    double num = 0, den = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - s * b[i]));
        den = std::max({den, std::abs(a[i]), std::abs(b[i])});
    }
    return num / std::max(den, 1e-300);
}

// LLL on integer row vectors with floating Gram-Schmidt; fine for the small systems used here.
void lll(std::vector<std::vector<long>>& B) {
    const size_t k = B.size();
    if (k < 2) return;
    const size_t d = B[0].size();
    auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0;
        for (size_t i = 0; i < d; ++i) s += a[i] * b[i];
        return s;
    };
    auto gso = [&](std::vector<std::vector<double>>& bs, std::vector<std::vector<double>>& mu) {
        bs.assign(k, std::vector<double>(d));
        mu.assign(k, std::vector<double>(k, 0.0));
        for (size_t i = 0; i < k; ++i) {
            for (size_t t = 0; t < d; ++t) bs[i][t] = static_cast<double>(B[i][t]);
            for (size_t j = 0; j < i; ++j) {
                std::vector<double> bi(d);
                for (size_t t = 0; t < d; ++t) bi[t] = static_cast<double>(B[i][t]);
                mu[i][j] = dot(bi, bs[j]) / dot(bs[j], bs[j]);
                for (size_t t = 0; t < d; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
            }
        }
    };
    std::vector<std::vector<double>> bs, mu;
    gso(bs, mu);
    size_t i = 1;
    while (i < k) {
        for (size_t j = i; j-- > 0;) {
            const long q = std::lround(mu[i][j]);
            if (q != 0) {
                for (size_t t = 0; t < d; ++t) B[i][t] -= q * B[j][t];
                gso(bs, mu);
            }
        }
        if (dot(bs[i], bs[i]) >= (0.75 - mu[i][i - 1] * mu[i][i - 1]) * dot(bs[i - 1], bs[i - 1])) {
            ++i;
        } else {
            std::swap(B[i], B[i - 1]);
            gso(bs, mu);
            i = std::max<size_t>(i - 1, 1);
        }
    }
}

long norm2(const std::vector<long>& v) {
    long s = 0;
    for (long a : v) s += a * a;
    return s;
}

// Smallest squared norm of three integers with the given sum.
long min_norm_with_sum(long s) {
    s = std::labs(s);
    const long q = s / 3, r = s % 3;
    return 3 * q * q + r * (2 * q + 1);
}

void assign_decorations(TransitPattern& p, const std::vector<long>& x) {
    for (int t = 0; t < 5; ++t)
        for (int j = 0; j < 3; ++j) {
            p.tetra[t].f[j] = static_cast<int>(x[t * 6 + j]);
            p.tetra[t].c[j] = static_cast<int>(x[t * 6 + 3 + j]);
        }
}

std::vector<std::array<int, 3>> faces_of(const std::array<int, 4>& v) {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < 4; ++i) {
        std::array<int, 3> f{};
        int m = 0;
        for (int j = 0; j < 4; ++j)
            if (j != i) f[m++] = v[j];
        out.push_back(f);
    }
    return out;
}

}  // namespace

std::array<cplx, 3> cross_ratio_moduli(cplx w0) {
    return {w0, 1.0 / (1.0 - w0), 1.0 - 1.0 / w0};
}

int log_defect(cplx w0) {
    const auto w = cross_ratio_moduli(w0);
    double s = 0;
    for (cplx x : w) s += std::log(x).imag();
    return static_cast<int>(std::lround(s / kPi));
}

void validate(const QHTetra& t) {
    if (t.b != 1 && t.b != -1) throw DilogError("branching orientation must be +-1");
    if (std::abs(t.w0) < 1e-12 || std::abs(t.w0 - 1.0) < 1e-12) throw DilogError("degenerate modulus");
    const auto w = cross_ratio_moduli(t.w0);
    if (std::abs(w[0] * w[1] * w[2] + 1.0) > 1e-12 * std::max(1.0, std::abs(w[0] * w[1] * w[2])))
        throw DilogError("w0 w1 w2 != -1");
    if (t.f[0] + t.f[1] + t.f[2] != -log_defect(t.w0)) throw DilogError("flattening condition fails");
    if (t.c[0] + t.c[1] + t.c[2] != 1) throw DilogError("charge condition fails");
}

RootModuli root_moduli(const QHTetra& t, int n) {
    validate(t);
    const auto w = cross_ratio_moduli(t.w0);
    RootModuli r;
    for (int j = 0; j < 3; ++j) {
        r.exponent[j] = static_cast<long>(n + 1) * (t.f[j] - t.b * t.c[j]);
        r.w[j] = std::exp((std::log(w[j]) + I1 * kPi * static_cast<double>(r.exponent[j])) / static_cast<double>(n));
    }
    return r;
}

cplx omega(cplx u, cplx v, int k, int n) {
    cplx r = 1.0;
    for (int j = 1; j <= mod(k, n); ++j) r *= v / (1.0 - u * zeta(n, j));
    return r;
}

cplx g_fun(cplx x, int n, bool* near_cut) {
    cplx r = 1.0;
    for (int j = 1; j < n; ++j) {
        const cplx a = 1.0 - x * zeta(n, -j);
        if (near_cut && std::abs(a) < 1e-8) *near_cut = true;
        if (a == 0.0) return 0.0;
        r *= std::exp(static_cast<double>(j) / n * std::log(a));
    }
    return r;
}

cplx h_fun(cplx x, int n, bool* near_cut) { return g_fun(x, n, near_cut) / g_fun(1.0, n); }

Mat Ln_matrix(cplx u, cplx v, int n) {
    const int m = (n - 1) / 2;
    const cplx h = h_fun(u, n);
    Mat L = Mat::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int l = mod(i + j, n);
                L(i * n + j, k * n + l) = h * zeta(n, static_cast<long>(k) * j + (m + 1L) * k * k) * omega(u, v, i - k, n);
            }
    return L;
}

Mat Ln_inverse(cplx u, cplx v, int n) {
    const int m = (n - 1) / 2;
    const cplx h = h_fun(u, n);
    const cplx bracket = (1.0 - std::pow(u, n)) / (1.0 - u) / static_cast<double>(n);
    const cplx uz = u / zeta(n, 1);
    Mat L = Mat::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const int l = mod(i + j, n);
                L(k * n + l, i * n + j) =
                    bracket / h * zeta(n, -(static_cast<long>(k) * j + (m + 1L) * k * k)) / omega(uz, v, i - k, n);
            }
    return L;
}

FaceTensor Rn_tetra(const QHTetra& t, int n, const FaceRoles& roles) {
    const RootModuli r = root_moduli(t, n);
    const int m = (n - 1) / 2;
    const cplx pre = std::pow(std::pow(r.w[0], -t.c[1]) * std::pow(r.w[1], t.c[0]), m);
    const cplx u = r.w[0], v = 1.0 / r.w[1];
    const Mat L = t.b == 1 ? Ln_matrix(u, v, n) : Ln_inverse(u, v, n);
    FaceTensor out;
    out.n = n;
    out.a.assign(static_cast<size_t>(n) * n * n * n, 0.0);
    std::array<int, 4> s{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const cplx e = t.b == 1 ? L(i * n + j, k * n + l) : L(k * n + l, i * n + j);
                    s[roles[0]] = i;
                    s[roles[1]] = j;
                    s[roles[2]] = k;
                    s[roles[3]] = l;
                    out.a[((s[0] * n + s[1]) * n + s[2]) * n + s[3]] = pre * e;
                }
    return out;
}

std::optional<IntegerSolution> solve_integer(const std::vector<std::vector<long>>& A, const std::vector<long>& b) {
    const size_t m = A.size();
    const size_t nv = m ? A[0].size() : 0;
    std::vector<std::vector<long>> H = A;
    std::vector<std::vector<long>> U(nv, std::vector<long>(nv, 0));
    for (size_t i = 0; i < nv; ++i) U[i][i] = 1;
    // new col j = a colj + b colk, new col k = c colj + d colk
    auto colop = [&](size_t j, size_t k, long a, long bb, long c, long d) {
        for (auto* M : {&H, &U})
            for (auto& r : *M) {
                const long x = r[j], y = r[k];
                r[j] = a * x + bb * y;
                r[k] = c * x + d * y;
            }
    };
    size_t piv = 0;
    std::vector<size_t> pivrows;
    for (size_t i = 0; i < m && piv < nv; ++i) {
        for (size_t k = piv + 1; k < nv; ++k) {
            while (H[i][k] != 0) {
                if (H[i][piv] == 0) {
                    colop(piv, k, 0, 1, 1, 0);
                    continue;
                }
                const long q = H[i][k] / H[i][piv];
                colop(piv, k, 1, 0, -q, 1);
                if (H[i][k] != 0) colop(piv, k, 0, 1, 1, 0);
            }
        }
        if (H[i][piv] != 0) {
            if (H[i][piv] < 0)
                for (auto* M : {&H, &U})
                    for (auto& r : *M) r[piv] = -r[piv];
            pivrows.push_back(i);
            ++piv;
        }
    }
    std::vector<long> y(nv, 0);
    for (size_t c = 0; c < pivrows.size(); ++c) {
        const size_t i = pivrows[c];
        long s = b[i];
        for (size_t cc = 0; cc < c; ++cc) s -= H[i][cc] * y[cc];
        if (s % H[i][c] != 0) return std::nullopt;
        y[c] = s / H[i][c];
    }
    IntegerSolution sol;
    sol.x.assign(nv, 0);
    for (size_t r = 0; r < nv; ++r)
        for (size_t c = 0; c < nv; ++c) sol.x[r] += U[r][c] * y[c];
    for (size_t i = 0; i < m; ++i) {
        long s = 0;
        for (size_t j = 0; j < nv; ++j) s += A[i][j] * sol.x[j];
        if (s != b[i]) return std::nullopt;
    }
    for (size_t c = piv; c < nv; ++c) {
        std::vector<long> k(nv);
        for (size_t r = 0; r < nv; ++r) k[r] = U[r][c];
        sol.kernel.push_back(k);
    }
    return sol;
}

TransitPattern build_23_transit(cplx x, cplx y, int n, int orientation) {
    if (std::abs(x - y) < 1e-12) throw DilogError("x = y");
    const std::array<cplx, 5> w0{x, y, y / x, (1.0 - 1.0 / x) / (1.0 - 1.0 / y), (1.0 - x) / (1.0 - y)};
    for (cplx w : w0)
        if (!std::isfinite(std::abs(w)) || std::abs(w) < 1e-12 || std::abs(w - 1.0) < 1e-12)
            throw DilogError("modulus-degenerate");
    TransitPattern p;
    p.n = n;
    p.x = x;
    p.y = y;
    for (int i = 0; i < 5; ++i) {
        int m = 0;
        for (int v = 0; v < 5; ++v)
            if (v != i) p.vertices[i][m++] = v;
        p.tetra[i].b = orientation;
        p.tetra[i].w0 = w0[i];
    }

    // unknowns: f_t at 6t..6t+2, c_t at 6t+3..6t+5
    std::vector<std::vector<long>> A;
    std::vector<long> b;
    for (int t = 0; t < 5; ++t) {
        std::vector<long> rf(30, 0), rc(30, 0);
        for (int j = 0; j < 3; ++j) {
            rf[t * 6 + j] = 1;
            rc[t * 6 + 3 + j] = 1;
        }
        A.push_back(rf);
        b.push_back(-log_defect(w0[t]));
        A.push_back(rc);
        b.push_back(1);
    }
    // At a common edge the flattened logs agree on both sides, which gives W' and C.
    for (int a = 0; a < 5; ++a)
        for (int c = a + 1; c < 5; ++c) {
            if (a == 1 && c == 3) continue;
            p.common_edges.push_back({a, c});
            std::vector<long> rf(30, 0), rc(30, 0);
            double k = 0;
            for (int side = 0; side < 2; ++side) {
                const long sg = side == 0 ? 1 : -1;
                for (int t : side == 0 ? p.T : p.Tp) {
                    const auto& v = p.vertices[t];
                    const auto ia = std::find(v.begin(), v.end(), a) - v.begin();
                    const auto ic = std::find(v.begin(), v.end(), c) - v.begin();
                    if (ia == 4 || ic == 4) continue;
                    const int j = edge_modulus(static_cast<int>(ia), static_cast<int>(ic));
                    rf[t * 6 + j] += sg;
                    rc[t * 6 + 3 + j] += sg;
                    k += static_cast<double>(sg) * std::log(cross_ratio_moduli(w0[t])[j]).imag() / kPi;
                }
            }
            A.push_back(rf);
            b.push_back(-std::lround(k));
            A.push_back(rc);
            b.push_back(0);
        }
    auto sol = solve_integer(A, b);
    if (!sol) throw DilogError("no integer solution of the transit system");

    std::vector<std::vector<long>> ker = sol->kernel;
    lll(ker);
    // Babai-style reduction of the particular solution, then a {-1,0,1} neighbourhood search.
    std::vector<long> base = sol->x;
    for (int pass = 0; pass < 4; ++pass)
        for (const auto& k : ker) {
            const double num = std::inner_product(base.begin(), base.end(), k.begin(), 0.0);
            const long q = std::lround(num / static_cast<double>(norm2(k)));
            if (q != 0)
                for (size_t i = 0; i < base.size(); ++i) base[i] -= q * k[i];
        }
    std::vector<long> best = base, cur(base.size());
    long bestn = norm2(best);
    std::vector<int> co(ker.size(), -1);
    while (true) {
        cur = base;
        for (size_t i = 0; i < ker.size(); ++i)
            for (size_t t = 0; t < cur.size(); ++t) cur[t] += co[i] * ker[i][t];
        const long nn = norm2(cur);
        if (nn < bestn || (nn == bestn && cur < best)) {
            best = cur;
            bestn = nn;
        }
        size_t i = 0;
        while (i < co.size() && co[i] == 1) co[i++] = -1;
        if (i == co.size()) break;
        ++co[i];
    }
    long bound = 0;
    for (int t = 0; t < 5; ++t) bound += min_norm_with_sum(log_defect(w0[t])) + 1;
    p.certified_minimal = bestn == bound;
    assign_decorations(p, best);
    p.kernel = ker;
    for (const auto& t : p.tetra) validate(t);
    return p;
}

TransitPattern shifted(const TransitPattern& p, const std::vector<long>& coeff) {
    std::vector<long> x(30);
    for (int t = 0; t < 5; ++t)
        for (int j = 0; j < 3; ++j) {
            x[t * 6 + j] = p.tetra[t].f[j];
            x[t * 6 + 3 + j] = p.tetra[t].c[j];
        }
    for (size_t i = 0; i < coeff.size() && i < p.kernel.size(); ++i)
        for (int t = 0; t < 30; ++t) x[t] += coeff[i] * p.kernel[i][t];
    TransitPattern q = p;
    assign_decorations(q, x);
    return q;
}

TransitResidual transit_residual(const TransitPattern& p) {
    TransitResidual r;
    std::array<RootModuli, 5> roots;
    for (int t = 0; t < 5; ++t) {
        try {
            roots[t] = root_moduli(p.tetra[t], p.n);
        } catch (const DilogError&) {
            r.tetra_valid = false;
            return r;
        }
    }
    for (const auto& e : p.common_edges) {
        std::array<cplx, 2> W{1.0, 1.0};
        std::array<long, 2> C{0, 0};
        for (int side = 0; side < 2; ++side)
            for (int t : side == 0 ? p.T : p.Tp) {
                const auto& v = p.vertices[t];
                const auto ia = std::find(v.begin(), v.end(), e[0]) - v.begin();
                const auto ic = std::find(v.begin(), v.end(), e[1]) - v.begin();
                if (ia == 4 || ic == 4) continue;
                const int j = edge_modulus(static_cast<int>(ia), static_cast<int>(ic));
                W[side] *= p.tetra[t].b == 1 ? roots[t].w[j] : 1.0 / roots[t].w[j];
                C[side] += p.tetra[t].c[j];
            }
        r.w_prime = std::max(r.w_prime, std::abs(W[0] - W[1]) / std::max(1.0, std::abs(W[0])));
        if (C[0] != C[1]) r.charges_equal = false;
    }
    return r;
}

std::vector<std::array<int, 3>> external_faces() {
    // each face of the bipyramid boundary contains exactly one of the apexes 1, 3
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                const bool has1 = a == 1 || b == 1 || c == 1;
                const bool has3 = a == 3 || b == 3 || c == 3;
                if (has1 != has3) out.push_back({a, b, c});
            }
    return out;
}

std::vector<cplx> contract(const TransitPattern& p, bool primed, const FaceRoles& roles) {
    const int n = p.n;
    const std::vector<int>& side = primed ? p.Tp : p.T;
    const auto ext = external_faces();
    std::vector<std::array<int, 3>> internal;
    std::vector<FaceTensor> tensors;
    std::vector<std::array<int, 4>> slot;  // variable index of each local face
    for (int t : side) {
        tensors.push_back(Rn_tetra(p.tetra[t], n, roles));
        std::array<int, 4> s{};
        const auto fs = faces_of(p.vertices[t]);
        for (int i = 0; i < 4; ++i) {
            const auto it = std::find(ext.begin(), ext.end(), fs[i]);
            if (it != ext.end()) {
                s[i] = static_cast<int>(it - ext.begin());
                continue;
            }
            auto jt = std::find(internal.begin(), internal.end(), fs[i]);
            if (jt == internal.end()) {
                internal.push_back(fs[i]);
                jt = internal.end() - 1;
            }
            s[i] = 6 + static_cast<int>(jt - internal.begin());
        }
        slot.push_back(s);
    }
    const int next = static_cast<int>(ext.size());
    long inner = 1, outer = 1;
    for (size_t i = 0; i < internal.size(); ++i) inner *= n;
    for (int i = 0; i < next; ++i) outer *= n;
    std::vector<cplx> out(outer, 0.0);

    auto work = [&](long lo, long hi) {
        std::vector<int> st(next + internal.size());
        for (long e = lo; e < hi; ++e) {
            long r = e;
            for (int i = next - 1; i >= 0; --i) {
                st[i] = static_cast<int>(r % n);
                r /= n;
            }
            cplx acc = 0.0;
            for (long s = 0; s < inner; ++s) {
                long q = s;
                for (size_t i = internal.size(); i-- > 0;) {
                    st[next + i] = static_cast<int>(q % n);
                    q /= n;
                }
                cplx prod = 1.0;
                for (size_t t = 0; t < tensors.size() && prod != 0.0; ++t) {
                    const auto& sl = slot[t];
                    prod *= tensors[t](st[sl[0]], st[sl[1]], st[sl[2]], st[sl[3]]);
                }
                acc += prod;
            }
            out[e] = acc;
        }
    };
    const int nt = std::min<long>(thread_count(), outer);
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w) pool.emplace_back(work, outer * w / nt, outer * (w + 1) / nt);
    for (auto& th : pool) th.join();
    return out;
}

FiveTerm five_term(const TransitPattern& p, const FaceRoles& roles) {
    const auto a = contract(p, false, roles);
    const auto b = contract(p, true, roles);
    FiveTerm r;
    r.residual = rel_max(a, b);
    r.phase_residual = r.residual;
    for (int k = 1; k < p.n; ++k) {
        const double v = rel_max(a, b, zeta(p.n, k));
        if (v < r.phase_residual) {
            r.phase_residual = v;
            r.phase = k;
        }
    }
    return r;
}

double five_term_check(cplx x, cplx y, int n) { return five_term(build_23_transit(x, y, n)).residual; }

ConventionSearch face_convention_search(cplx x, cplx y, int n, double tol) {
    ConventionSearch s;
    for (int inv = 0; inv < 2; ++inv) {
        const TransitPattern p = build_23_transit(x, y, n, inv ? -1 : 1);
        FaceRoles r{0, 1, 2, 3};
        do {
            s.cases.push_back({r, inv == 1, five_term(p, r).residual});
        } while (std::next_permutation(r.begin(), r.end()));
    }
    std::stable_sort(s.cases.begin(), s.cases.end(),
                     [](const ConventionCase& a, const ConventionCase& b) { return a.residual < b.residual; });
    std::vector<FaceRoles> keys;
    for (const auto& c : s.cases) {
        if (c.residual > tol) continue;
        s.passing.push_back(c);
        FaceRoles rev;
        for (int i = 0; i < 4; ++i) rev[i] = 3 - c.roles[i];
        const FaceRoles key = std::min(c.roles, rev);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    s.classes = static_cast<int>(keys.size());
    return s;
}

double rogers_L(double x, double* error) {
    if (!(x > 0.0 && x <= 1.0)) throw DilogError("rogers_L needs 0 < x <= 1");
    boost::math::quadrature::tanh_sinh<double> q;
    auto f = [](double t) {
        if (t <= 0.0) return -1.0;
        if (t >= 1.0) return -1.0;
        return std::log(t) / (1.0 - t) + std::log1p(-t) / t;
    };
    double err = 0;
    const double v = q.integrate(f, 0.0, x, 1e-15, &err);
    if (error) *error = err * std::max(1.0, std::abs(v));
    return -kPi * kPi / 6.0 - 0.5 * v;
}

double classical_five_term(double x, double y) {
    return rogers_L(x) - rogers_L(y) + rogers_L(y / x) - rogers_L((1.0 - 1.0 / x) / (1.0 - 1.0 / y)) +
           rogers_L((1.0 - x) / (1.0 - y));
}

std::array<cplx, 6> cross_ratios(cplx a, cplx b, cplx c, cplx d) {
    const cplx l = ((a - c) * (b - d)) / ((a - b) * (c - d));
    return {l, 1.0 / l, 1.0 - l, 1.0 / (1.0 - l), l / (l - 1.0), (l - 1.0) / l};
}

double scaling_distance(const Mat& A, const Mat& B) {
    const int n = static_cast<int>(A.rows());
    const double scale = std::max(B.cwiseAbs().maxCoeff(), 1e-300);
    std::vector<int> p(n), q(n);
    std::vector<cplx> al(n), be(n);
    std::iota(p.begin(), p.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        std::iota(q.begin(), q.end(), 0);
        do {
            if (A(0, 0) == 0.0) continue;
            for (int i = 0; i < n; ++i) al[i] = A(i, 0) == 0.0 ? 0.0 : B(p[i], q[0]) / A(i, 0);
            for (int k = 0; k < n; ++k) be[k] = A(0, k) == 0.0 || al[0] == 0.0 ? 0.0 : B(p[0], q[k]) / (al[0] * A(0, k));
            double r = 0;
            for (int i = 0; i < n && r < best; ++i)
                for (int k = 0; k < n && r < best; ++k)
                    r = std::max(r, std::abs(B(p[i], q[k]) - al[i] * be[k] * A(i, k)) / scale);
            best = std::min(best, r);
        } while (std::next_permutation(q.begin(), q.end()));
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

ReductionReport reduction_check(const ModuleRep& rho, const ModuleRep& mu, const ModuleRep& nu, double tol) {
    const int n = rho.n;
    for (const ModuleRep* m : {&rho, &mu, &nu}) {
        const CentralCharacter chi = central_character(*m);
        if (std::abs(chi.x) < 1e-9 || std::abs(chi.y) < 1e-9) throw DilogError("triple is not cyclic");
    }
    const Mat R = sixj_operator(rho, mu, nu).R;
    const auto pR = char_poly(R);
    // R is block diagonal over the fiber of fgh: row r n + c, column c n + l
    std::vector<Mat> blocks(n, Mat(n, n));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            for (int l = 0; l < n; ++l) blocks[c](r, l) = R(r * n + c, c * n + l);

    const Mat2 f = sigma(tau(central_character(rho)));
    const Mat2 g = sigma(tau(central_character(mu)));
    const Mat2 h = sigma(tau(central_character(nu)));
    auto at0 = [](const Mat2& m) { return m(0, 1) / m(1, 1); };
    ReductionReport rep;
    rep.points = {0.0, at0(f), at0(f * g), at0(f * g * h)};
    const auto crs = cross_ratios(rep.points[0], rep.points[1], rep.points[2], rep.points[3]);
    rep.best = std::numeric_limits<double>::infinity();
    rep.best_scaling = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) rep.block_spread = std::max(rep.block_spread, scaling_distance(blocks[a], blocks[b]));
    for (int conv = 0; conv < 6; ++conv) {
        const cplx sq = std::sqrt(crs[conv]);
        for (int sign = 0; sign < 2; ++sign) {
            const cplx w0 = sign ? -sq : sq;
            if (std::abs(w0) < 1e-12 || std::abs(w0 - 1.0) < 1e-12) continue;
            const cplx r0 = nth_root(w0, n), r1 = nth_root(1.0 / (1.0 - w0), n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    ReductionCandidate c;
                    c.convention = conv;
                    c.w0sq = crs[conv];
                    c.w0 = w0;
                    c.u = r0 * zeta(n, a);
                    c.v = 1.0 / (r1 * zeta(n, b));
                    const auto pL = char_poly(Ln_matrix(c.u, c.v, n));
                    double num = 0, den = 1;
                    for (size_t i = 0; i < pL.size(); ++i) {
                        num = std::max(num, std::abs(pL[i] - pR[i]));
                        den = std::max(den, std::abs(pR[i]));
                    }
                    c.charpoly_residual = num / den;
                    // block l = 0 of L: rows (i, -i), columns (k, 0)
                    const Mat L = Ln_matrix(c.u, c.v, n);
                    Mat A(n, n);
                    for (int i = 0; i < n; ++i)
                        for (int k = 0; k < n; ++k) A(i, k) = L(i * n + mod(-i, n), k * n);
                    c.scaling_residual = 0;
                    for (const Mat& B : blocks)
                        c.scaling_residual = std::max(c.scaling_residual, scaling_distance(A, B));
                    rep.best_scaling = std::min(rep.best_scaling, c.scaling_residual);
                    rep.best = std::min(rep.best, c.charpoly_residual);
                    rep.candidates.push_back(c);
                }
        }
    }
    rep.pass = rep.best <= tol;
    return rep;
}

}  // namespace uqeps
