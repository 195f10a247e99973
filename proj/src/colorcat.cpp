#include "uqeps/colorcat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace uqeps {

namespace {

cplx eps_of(const ScalarContext& ctx) { return ctx.epsilon(); }

cplx qfact_c(int m, cplx q) {
    cplx acc = 1.0;
    for (int k = 2; k <= m; ++k) acc *= qint_c(k, q);
    return acc;
}

ModuleRep trivial_module(const ScalarContext& ctx) {
    ModuleRep t;
    t.n = ctx.n;
    t.d = ctx.d;
    t.dim = 1;
    t.E = Mat::Zero(1, 1);
    t.F = Mat::Zero(1, 1);
    t.K = Mat::Identity(1, 1);
    t.spec = DerivedSpec{"trivial"};
    return t;
}

void check_color(int r, int n) {
    if (r < 0 || r > n - 2) throw ColorError("color out of range");
}

// V_r sits in V_1^{(x) r} as the submodule generated by v_0 (x) ... (x) v_0.
struct Strands {
    Mat cup;  // 4 x 1, invariant
    Mat cap;  // 1 x 4, invariant, (id x cap)(cup x id) = id
    std::vector<Mat> iota, pi;
};

Strands strands(const ScalarContext& ctx, int rmax) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, Strands> cache;
    std::lock_guard<std::mutex> lock(mu);
    Strands& s = cache[{ctx.n, ctx.d}];
    if (s.cup.size() == 0) {
        const ModuleRep v1 = color_module(1, ctx);
        const ModuleRep vv = tensor_product(v1, v1);
        const ModuleRep triv = trivial_module(ctx);
        const auto up = module_intertwiners(triv, vv);
        const auto down = module_intertwiners(vv, triv);
        if (up.size() != 1 || down.size() != 1) throw ColorError("no unique invariant on V_1 x V_1");
        s.cup = up.front();
        s.cap = down.front();
        const Mat i2 = Mat::Identity(2, 2);
        const Mat zig = kron(i2, s.cap) * kron(s.cup, i2);
        s.cap /= zig(0, 0);
    }
    ModuleRep power = trivial_module(ctx);
    for (int r = 0; r <= rmax; ++r) {
        if (r > 0) power = tensor_product(power, color_module(1, ctx));
        if (r < static_cast<int>(s.iota.size())) continue;
        const ModuleRep vr = color_module(r, ctx);
        Mat io(power.dim, r + 1);
        Vec col = Vec::Zero(power.dim);
        col(0) = 1.0;
        for (int m = 0; m <= r; ++m) {
            io.col(m) = col;
            col = power.F * col;
        }
        const auto sp = module_intertwiners(power, vr);
        if (sp.size() != 1) throw ColorError("projection to V_r is not unique");
        Mat p = sp.front();
        p /= (p * io)(0, 0);
        s.iota.push_back(io);
        s.pi.push_back(p);
    }
    return s;
}

Mat nested_cup(const Strands& s, int m) {
    Mat u = Mat::Ones(1, 1);
    for (int t = 0; t < m; ++t) {
        // a (x) u (x) b weighted by cup_{ab}
        const Eigen::Index w = u.rows();
        Mat out = Mat::Zero(4 * w, 1);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (Eigen::Index x = 0; x < w; ++x) out((a * w + x) * 2 + b, 0) = s.cup(2 * a + b, 0) * u(x, 0);
        u = out;
    }
    return u;
}

Mat nested_cap(const Strands& s, int m) {
    Mat u = Mat::Ones(1, 1);
    for (int t = 0; t < m; ++t) {
        const Eigen::Index w = u.cols();
        Mat out = Mat::Zero(1, 4 * w);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (Eigen::Index x = 0; x < w; ++x) out(0, (a * w + x) * 2 + b) = s.cap(0, 2 * a + b) * u(0, x);
        u = out;
    }
    return u;
}

Mat ident_pow2(int r) { return Mat::Identity(Eigen::Index(1) << r, Eigen::Index(1) << r); }

Mat strand_vertex(int i, int j, int k, const ScalarContext& ctx) {
    const int m = (i + j - k) / 2;
    const Strands s = strands(ctx, std::max({i, j, k}));
    const Mat mid = kron(ident_pow2(i - m), kron(nested_cup(s, m), ident_pow2(j - m)));
    return kron(s.pi[i], s.pi[j]) * mid * s.iota[k];
}

Mat strand_covertex(int i, int j, int k, const ScalarContext& ctx) {
    const int m = (i + j - k) / 2;
    const Strands s = strands(ctx, std::max({i, j, k}));
    const Mat mid = kron(ident_pow2(i - m), kron(nested_cap(s, m), ident_pow2(j - m)));
    return s.pi[k] * mid * kron(s.iota[i], s.iota[j]);
}

void check_vertex(const Mat& y, const ModuleRep& src, const ModuleRep& tgt) {
    double r = 0;
    r = std::max(r, rel_diff(y * src.E, tgt.E * y));
    r = std::max(r, rel_diff(y * src.F, tgt.F * y));
    r = std::max(r, rel_diff(y * src.K, tgt.K * y));
    if (r > 1e-10) throw ColorError("vertex does not commute with the action");
}

}  // namespace

cplx qtrace(const ModuleRep& rep, const Mat& f) {
    if (f.rows() != rep.dim || f.cols() != rep.dim) throw ColorError("qtrace: dimension mismatch");
    return (rep.K * f).trace();
}

cplx qdim(const ModuleRep& rep) { return rep.K.trace(); }

Cyclo qdim_exact(int r, int sign, const CycloField* f) {
    Cyclo acc(0L);
    for (int j = 0; j <= r; ++j) acc += Cyclo::qpow(f, r - 2 * j);
    return sign > 0 ? acc : -acc;
}

ModuleRep color_module(int r, const ScalarContext& ctx) { return build_module(HighestWeightSpec{r, 1}, ctx); }

bool admissible(int i, int j, int k, int n) {
    if (i < 0 || j < 0 || k < 0) return false;
    if ((i + j + k) % 2 != 0) return false;
    if (i + j + k > 2 * (n - 2)) return false;
    return std::abs(i - j) <= k && k <= i + j;
}

Intertwiner clebsch_gordan(int i, int j, int k, const ScalarContext& ctx, Gauge g) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int, int, int>, Intertwiner> cache;
    const auto key = std::make_tuple(ctx.n, ctx.d, i, j, k, static_cast<int>(g));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const int n = ctx.n;
    check_color(i, n);
    check_color(j, n);
    check_color(k, n);
    if (!admissible(i, j, k, n)) throw ColorError("clebsch_gordan: triple not admissible");
    if (i + j > n - 2) throw ColorError("clebsch_gordan: i + j > n - 2");
    const ModuleRep vi = color_module(i, ctx), vj = color_module(j, ctx), vk = color_module(k, ctx);
    const ModuleRep t = tensor_product(vi, vj);
    Intertwiner out{k, i, j, {}};
    if (g == Gauge::theta) {
        out.map = strand_vertex(i, j, k, ctx);
    } else {
        const cplx w = std::pow(eps_of(ctx), k);
        Mat sys(2 * t.dim, t.dim);
        sys << t.E, t.K - w * Mat::Identity(t.dim, t.dim);
        const Mat ker = kernel(sys);
        if (ker.cols() != 1) throw ColorError("clebsch_gordan: highest weight space is not one dimensional");
        Vec v = ker.col(0);
        const int m = (i + j - k) / 2;
        if (std::abs(v(m)) < 1e-12) throw ColorError("clebsch_gordan: normalizing coefficient vanishes");
        v /= v(m);
        out.map = Mat(t.dim, k + 1);
        for (int c = 0; c <= k; ++c) {
            out.map.col(c) = v;
            v = t.F * v;
        }
    }
    check_vertex(out.map, vk, t);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

cplx theta(int a, int b, int k, const ScalarContext& ctx) {
    if (!admissible(a, b, k, ctx.n)) throw ColorError("theta: triple not admissible");
    const cplx q = eps_of(ctx);
    const int s = (a + b + k) / 2;
    const cplx num = qfact_c(s - k, q) * qfact_c(s - b, q) * qfact_c(s - a, q) * qfact_c(s + 1, q);
    const cplx den = qfact_c(a, q) * qfact_c(b, q) * qfact_c(k, q);
    return (s % 2 ? -1.0 : 1.0) * num / den;
}

cplx theta_network(int a, int b, int k, const ScalarContext& ctx) {
    if (!admissible(a, b, k, ctx.n)) throw ColorError("theta_network: triple not admissible");
    if (a + b > ctx.n - 2) throw ColorError("theta_network: a + b > n - 2");
    const Mat c = strand_covertex(a, b, k, ctx) * strand_vertex(a, b, k, ctx);
    const cplx s = c(0, 0);
    if ((c - s * Mat::Identity(k + 1, k + 1)).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, std::abs(s)))
        throw ColorError("theta_network: closure is not scalar");
    return s * (k % 2 ? -1.0 : 1.0) * qint_c(k + 1, eps_of(ctx));
}

SixJRaw sixj_raw(int a, int b, int l, int c, int k, int j, const ScalarContext& ctx, Gauge g) {
    const int n = ctx.n;
    for (int r : {a, b, l, c, k, j}) check_color(r, n);
    if (a + b + c > n - 2) throw ColorError("sixj_raw: a + b + c > n - 2");
    if (!admissible(b, c, j, n) || !admissible(a, j, k, n) || !admissible(a, b, l, n) || !admissible(l, c, k, n))
        return {0.0, 0.0};
    const Mat ia = Mat::Identity(a + 1, a + 1), ic = Mat::Identity(c + 1, c + 1);
    const Mat lhs = kron(ia, clebsch_gordan(b, c, j, ctx, g).map) * clebsch_gordan(a, j, k, ctx, g).map;
    std::vector<int> ls;
    std::vector<Mat> basis;
    for (int x = std::abs(a - b); x <= a + b; x += 2)
        if (admissible(x, c, k, n)) {
            ls.push_back(x);
            basis.push_back(kron(clebsch_gordan(a, b, x, ctx, g).map, ic) * clebsch_gordan(x, c, k, ctx, g).map);
        }
    const Eigen::Index rows = lhs.size();
    Mat A(rows, static_cast<Eigen::Index>(basis.size()));
    for (size_t t = 0; t < basis.size(); ++t) A.col(static_cast<Eigen::Index>(t)) = basis[t].reshaped();
    const Vec rhs = lhs.reshaped();
    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() != A.cols()) throw ColorError("sixj_raw: ill-conditioned system");
    const Vec sol = qr.solve(rhs);
    SixJRaw out;
    out.residual = (A * sol - rhs).norm() / std::max(1.0, rhs.norm());
    if (out.residual > 1e-9) throw ColorError("sixj_raw: trace zero remainder does not vanish");
    const auto it = std::find(ls.begin(), ls.end(), l);
    out.value = sol(it - ls.begin());
    return out;
}

cplx sixj_normalized(int a, int b, int f, int e, int d, int c, const ScalarContext& ctx, Gauge g) {
    const int n = ctx.n;
    if (!admissible(a, b, f, n) || !admissible(d, e, f, n) || !admissible(a, c, d, n) || !admissible(b, c, e, n))
        return 0.0;
    auto rt = [&](int x, int y, int z) { return std::sqrt(theta(x, y, z, ctx)); };
    const cplx ratio = rt(a, b, f) * rt(d, e, f) / (rt(a, c, d) * rt(b, c, e));
    const cplx pre = (f % 2 ? -1.0 : 1.0) / qint_c(f + 1, eps_of(ctx)) * ratio;
    return pre * sixj_raw(a, b, f, e, d, c, ctx, g).value;
}

std::vector<std::array<int, 9>> eb_configurations(int n) {
    std::vector<std::array<int, 9>> out;
    const int top = n - 2;
    for (int a = 0; a <= top; ++a)
        for (int b = 0; b <= top; ++b)
            for (int c = 0; c <= top; ++c)
                for (int d = 0; d <= top; ++d)
                    for (int e = 0; e <= top; ++e)
                        for (int f = 0; f <= top; ++f)
                            for (int g = 0; g <= top; ++g)
                                for (int h = 0; h <= top; ++h)
                                    for (int k = 0; k <= top; ++k) {
                                        // regimes of Psi(c,d,h;g,e,f), Psi(b,h,k;g,a,e), Psi(b,c,j;f,a,e),
                                        // Psi(j,d,k;g,a,f) for j <= b+c, Psi(c,d,h;k,b,j)
                                        if (c + d + g > top || b + h + g > top || b + c + f > top ||
                                            b + c + d + g > top || c + d + k > top)
                                            continue;
                                        out.push_back({a, b, c, d, e, f, g, h, k});
                                    }
    return out;
}

EBResult elliot_biedenharn(const ScalarContext& ctx, Gauge gg) {
    EBResult res;
    const int n = ctx.n;
    const cplx q = eps_of(ctx);
    std::map<std::array<int, 6>, cplx> memo;
    auto psi = [&](int a, int b, int f, int e, int d, int c) {
        const std::array<int, 6> key{a, b, f, e, d, c};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const cplx v = sixj_normalized(a, b, f, e, d, c, ctx, gg);
        memo.emplace(key, v);
        return v;
    };
    for (const auto& cf : eb_configurations(n)) {
        const auto [a, b, c, d, e, f, g, h, k] = cf;
        const cplx lhs = psi(c, d, h, g, e, f) * psi(b, h, k, g, a, e);
        cplx rhs = 0.0;
        for (int j = 0; j <= b + c && j <= n - 2; ++j)
            rhs += (j % 2 ? -1.0 : 1.0) * qint_c(j + 1, q) * psi(b, c, j, f, a, e) * psi(j, d, k, g, a, f) *
                   psi(c, d, h, k, b, j);
        ++res.configurations;
        if (std::abs(lhs) > 1e-12 || std::abs(rhs) > 1e-12) ++res.nontrivial;
        res.max_residual = std::max(res.max_residual, std::abs(lhs - rhs));
    }
    return res;
}

std::vector<std::array<int, 6>> tetrahedral_images(const std::array<int, 6>& s) {
    // columns (a,e), (b,d), (f,c) of the array [a b f; e d c]
    const std::array<std::array<int, 2>, 3> col{{{s[0], s[3]}, {s[1], s[4]}, {s[2], s[5]}}};
    std::vector<std::array<int, 6>> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        for (int flip = 0; flip < 4; ++flip) {
            // flip pattern: none, or swap rows in two of the three columns
            std::array<bool, 3> sw{false, false, false};
            if (flip > 0) {
                sw = {true, true, true};
                sw[flip - 1] = false;
            }
            std::array<int, 6> t{};
            for (int p = 0; p < 3; ++p) {
                const auto& cc = col[perm[p]];
                t[p] = sw[p] ? cc[1] : cc[0];
                t[p + 3] = sw[p] ? cc[0] : cc[1];
            }
            out.push_back(t);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace uqeps
