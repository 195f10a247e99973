#include "uqeps/fusion.hpp"

#include <algorithm>

#include "uqeps/qalgebra.hpp"

namespace uqeps {

namespace {

ScalarContext ctx_of(const ModuleRep& m) { return {m.n, m.d, Mode::Cyclotomic}; }

bool near_pm_identity(const Z0Character& h) {
    const double s = std::max({1.0, std::abs(h.x), std::abs(h.y)});
    return std::abs(h.x) < 1e-9 * s && std::abs(h.y) < 1e-9 * s &&
           (std::abs(h.z - 1.0) < 1e-9 || std::abs(h.z + 1.0) < 1e-9);
}

Z0Character tau_of(const ModuleRep& m) {
    const CentralCharacter c = central_character(m);
    return tau(c);
}

void check_same_fiber(const std::vector<CentralCharacter>& a, const std::vector<CentralCharacter>& b) {
    if (a.size() != b.size()) throw FusionError("fiber size mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
        const double s = std::max(1.0, std::abs(a[i].c));
        if (std::abs(a[i].c - b[i].c) > 1e-7 * s) throw FusionError("fibers of equal characters differ");
    }
}

// Blockwise operators on a three-slot space C^n (x) C^n (x) C^n, index i n^2 + j n + k.
// ops[s] acts on the two named slots while the remaining slot has index s.
Mat apply12(const std::vector<Mat>& ops, int n) {
    const int N = n * n * n;
    Mat out = Mat::Zero(N, N);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n * n; ++a)
            for (int b = 0; b < n * n; ++b) out(a * n + k, b * n + k) = ops[k](a, b);
    return out;
}

Mat apply13(const std::vector<Mat>& ops, int n) {
    const int N = n * n * n;
    Mat out = Mat::Zero(N, N);
    for (int j = 0; j < n; ++j)
        for (int i1 = 0; i1 < n; ++i1)
            for (int k1 = 0; k1 < n; ++k1)
                for (int i2 = 0; i2 < n; ++i2)
                    for (int k2 = 0; k2 < n; ++k2)
                        out(i1 * n * n + j * n + k1, i2 * n * n + j * n + k2) = ops[j](i1 * n + k1, i2 * n + k2);
    return out;
}

Mat apply23(const std::vector<Mat>& ops, int n) {
    const int N = n * n * n;
    Mat out = Mat::Zero(N, N);
    for (int i = 0; i < n; ++i) out.block(i * n * n, i * n * n, n * n, n * n) = ops[i];
    return out;
}

double rel_entrywise(const Mat& a, const Mat& b) {
    const double s = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / std::max(s, 1e-300);
}

}  // namespace

TensorRep tensor_rep(const ModuleRep& rho, const ModuleRep& mu) {
    TensorRep t;
    t.rho = rho;
    t.mu = mu;
    t.h = group_mul(tau_of(rho), tau_of(mu));
    if (near_pm_identity(t.h)) throw FusionError("non-regular pair: tau(rho) tau(mu) = +-id");
    t.product = tensor_product(rho, mu);
    return t;
}

IdempotentSet idempotents(const TensorRep& t) {
    const ScalarContext ctx = ctx_of(t.product);
    const int n = ctx.n;
    IdempotentSet out;
    out.fiber = tau_fiber(t.h, ctx);
    std::vector<cplx> cs;
    for (const auto& c : out.fiber) cs.push_back(c.c);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (std::abs(cs[a] - cs[b]) < 1e-7 * std::max(1.0, std::abs(cs[a])))
                throw FusionError("degenerate Casimir spectrum");
    const Mat omega = act(t.product, casimir<Cyclo>(CycloField::get(n, ctx.d)));
    const Mat I = Mat::Identity(n * n, n * n);
    for (int a = 0; a < n; ++a) {
        Mat p = I;
        for (int b = 0; b < n; ++b)
            if (b != a) p = p * (omega - cs[b] * I) / (cs[a] - cs[b]);
        out.projectors.push_back(p);
    }
    Eigen::ComplexEigenSolver<Mat> es(omega, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n * n);
    std::vector<cplx> want;
    for (int a = 0; a < n; ++a)
        for (int k = 0; k < n; ++k) want.push_back(cs[a]);
    if (multiset_distance(ev, want) > 1e-6 * std::max(1.0, std::abs(cs[0])))
        throw FusionError("Casimir spectrum does not match the fiber");
    out.eigenvalues = cs;
    return out;
}

ModuleRep standard_model(const CentralCharacter& chi, const ScalarContext& ctx) {
    const int n = ctx.n;
    const cplx eps = ctx.epsilon();
    const cplx qd = eps - 1.0 / eps;
    GenericSpec s;
    s.lambda = std::pow(chi.z, 1.0 / n);
    s.b = chi.y / std::pow(qd, n);
    if (std::abs(s.b) < 1e-12) throw FusionError("fiber character is not cyclic");
    s.a = (chi.c - (s.lambda * eps + 1.0 / (s.lambda * eps)) / (qd * qd)) / s.b;
    return build_module(s, ctx);
}

EvaluationMap evaluation_map(const ModuleRep& rho, const ModuleRep& mu) {
    const TensorRep t = tensor_rep(rho, mu);
    const ScalarContext ctx = ctx_of(rho);
    const int n = ctx.n;
    EvaluationMap ev;
    ev.fiber = tau_fiber(t.h, ctx);
    ev.K = Mat::Zero(n * n, n * n);
    for (int c = 0; c < n; ++c) {
        const ModuleRep m = standard_model(ev.fiber[c], ctx);
        const auto sp = module_intertwiners(m, t.product, 1e-9);
        if (sp.size() != 1) throw FusionError("intertwiner space is not one dimensional");
        Mat I = sp.front();
        Eigen::Index r;
        I.col(0).cwiseAbs().maxCoeff(&r);
        I /= I(r, 0);
        for (int v = 0; v < n; ++v) ev.K.col(v * n + c) = I.col(v);
        ev.models.push_back(m);
    }
    const cplx det = ev.K.determinant();
    ev.K /= std::pow(det, 1.0 / (n * n));
    return ev;
}

double twistcop_residual(const EvaluationMap& ev, const ModuleRep& rho, const ModuleRep& mu) {
    const ModuleRep p = tensor_product(rho, mu);
    const int n = rho.n;
    const Mat Kinv = ev.K.inverse();
    double r = 0;
    for (int g = 0; g < 3; ++g) {
        const Mat& big = g == 0 ? p.E : g == 1 ? p.F : p.K;
        Mat block = Mat::Zero(n * n, n * n);
        for (int c = 0; c < n; ++c) {
            const Mat& a = g == 0 ? ev.models[c].E : g == 1 ? ev.models[c].F : ev.models[c].K;
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w) block(v * n + c, w * n + c) = a(v, w);
        }
        r = std::max(r, rel_diff(Kinv * big * ev.K, block));
    }
    return r;
}

SixJOperator sixj_operator(const ModuleRep& rho, const ModuleRep& mu, const ModuleRep& nu, double tol,
                           bool permute_left) {
    const int n = rho.n;
    const Z0Character f = tau_of(rho), g = tau_of(mu), h = tau_of(nu);
    if (near_pm_identity(group_mul(group_mul(f, g), h))) throw FusionError("non-regular triple");
    const EvaluationMap fg = evaluation_map(rho, mu);
    const EvaluationMap gh = evaluation_map(mu, nu);
    SixJOperator out;
    out.fiber_fg = fg.fiber;
    out.fiber_gh = gh.fiber;

    // LeftDown: K_{12}(rho, chi_l) on slots 1,2 for slot-3 index l, then id (x) K(mu, nu)
    std::vector<int> perm(n);
    for (int l = 0; l < n; ++l) perm[l] = permute_left ? (l + 1) % n : l;
    std::vector<Mat> left(n);
    for (int l = 0; l < n; ++l) {
        const EvaluationMap e = evaluation_map(rho, gh.models[perm[l]]);
        if (out.fiber_fgh.empty()) out.fiber_fgh = e.fiber;
        check_same_fiber(out.fiber_fgh, e.fiber);
        left[l] = e.K;
    }
    Mat kmn = gh.K;
    if (permute_left) {
        const Mat orig = kmn;
        for (int w = 0; w < n; ++w)
            for (int l = 0; l < n; ++l) kmn.col(w * n + l) = orig.col(w * n + perm[l]);
    }
    const Mat leftDown = kron(Mat::Identity(n, n), kmn) * apply12(left, n);

    // RightDown: K_{13}(chi_r, nu) on slots 1,3 for slot-2 index r, then K(rho, mu) (x) id
    std::vector<Mat> right(n);
    for (int r = 0; r < n; ++r) {
        const EvaluationMap e = evaluation_map(fg.models[r], nu);
        check_same_fiber(out.fiber_fgh, e.fiber);
        right[r] = e.K;
    }
    const Mat rightDown = kron(fg.K, Mat::Identity(n, n)) * apply13(right, n);

    const Mat X = rightDown.partialPivLu().solve(leftDown);
    const int m = n * n;
    out.R = X.block(0, 0, m, m);
    const double scale = std::max(out.R.cwiseAbs().maxCoeff(), 1e-300);
    double res = 0;
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            const Mat want = v == w ? out.R : Mat::Zero(m, m);
            res = std::max(res, (X.block(v * m, w * m, m, m) - want).cwiseAbs().maxCoeff() / scale);
        }
    out.factor_residual = res;
    if (res > tol) throw FusionError("factor-identity violation");
    out.modpent_residual = rel_entrywise(rightDown * kron(Mat::Identity(n, n), out.R), leftDown);
    return out;
}

double pentagon_check(const ModuleRep& kappa, const ModuleRep& rho, const ModuleRep& mu, const ModuleRep& nu) {
    const int n = rho.n;
    const Z0Character f = tau_of(kappa), g = tau_of(rho), h = tau_of(mu), k = tau_of(nu);
    for (const auto& p : {group_mul(f, g), group_mul(g, h), group_mul(h, k), group_mul(group_mul(f, g), h),
                          group_mul(group_mul(g, h), k), group_mul(group_mul(group_mul(f, g), h), k)})
        if (near_pm_identity(p)) throw FusionError("non-regular 4-tuple");
    const EvaluationMap e_fg = evaluation_map(kappa, rho);
    const EvaluationMap e_gh = evaluation_map(rho, mu);
    const EvaluationMap e_hk = evaluation_map(mu, nu);

    const Mat R_rmn = sixj_operator(rho, mu, nu).R;    // M(ghk) M(hk) -> M(gh) M(ghk)
    const Mat R_krm = sixj_operator(kappa, rho, mu).R;  // M(fgh) M(gh) -> M(fg) M(fgh)
    std::vector<Mat> b13(n), b12(n), b23(n);
    for (int j = 0; j < n; ++j) b13[j] = sixj_operator(kappa, e_gh.models[j], nu).R;
    for (int s = 0; s < n; ++s) b12[s] = sixj_operator(kappa, rho, e_hk.models[s]).R;
    for (int i = 0; i < n; ++i) b23[i] = sixj_operator(e_fg.models[i], mu, nu).R;

    const Mat I = Mat::Identity(n, n);
    const Mat lhs = kron(R_krm, I) * apply13(b13, n) * kron(I, R_rmn);
    const Mat rhs = apply23(b23, n) * apply12(b12, n);
    return rel_entrywise(lhs, rhs);
}

}  // namespace uqeps
