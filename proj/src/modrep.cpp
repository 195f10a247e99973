#include "uqeps/modrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "uqeps/qalgebra.hpp"

namespace uqeps {

namespace {

cplx eps_of(const ScalarContext& ctx) { return ctx.epsilon(); }

Mat diag_inverse_or_solve(const Mat& K) {
    if (K.isDiagonal()) {
        Mat out = Mat::Zero(K.rows(), K.cols());
        for (Eigen::Index i = 0; i < K.rows(); ++i) out(i, i) = 1.0 / K(i, i);
        return out;
    }
    return K.inverse();
}

Mat mat_pow(const Mat& A, int k) {
    Mat out = Mat::Identity(A.rows(), A.cols());
    Mat base = A;
    while (k > 0) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return out;
}

cplx scalar_of(const Mat& M, double tol, const char* what) {
    const cplx s = M.trace() / static_cast<double>(M.rows());
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    const Mat diff = M - s * Mat::Identity(M.rows(), M.cols());
    if (diff.cwiseAbs().maxCoeff() > tol * scale) throw RepError(std::string("action of ") + what + " is not scalar");
    return s;
}

double rel_scalar_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

ModuleRep build_module(const ModuleSpec& spec, const ScalarContext& ctx) {
    ctx.validate();
    const cplx eps = eps_of(ctx);
    ModuleRep rep;
    rep.n = ctx.n;
    rep.d = ctx.d;
    rep.spec = spec;
    if (const auto* hw = std::get_if<HighestWeightSpec>(&spec)) {
        if (hw->r < 0 || hw->r > ctx.n - 1 || (hw->sign != 1 && hw->sign != -1))
            throw RepError("invalid highest weight spec");
        const int r = hw->r;
        const double sg = hw->sign;
        rep.dim = r + 1;
        rep.E = rep.F = rep.K = Mat::Zero(r + 1, r + 1);
        for (int j = 0; j <= r; ++j) {
            rep.K(j, j) = sg * std::pow(eps, r - 2 * j);
            if (j < r) rep.F(j + 1, j) = 1.0;
            if (j > 0) rep.E(j - 1, j) = sg * qint_c(j, eps) * qint_c(r - j + 1, eps);
        }
        return rep;
    }
    if (const auto* g = std::get_if<GenericSpec>(&spec)) {
        if (std::abs(g->lambda) == 0.0) throw RepError("invalid generic spec: lambda = 0");
        const int n = ctx.n;
        const cplx lam = g->lambda, a = g->a, b = g->b;
        rep.dim = n;
        rep.E = rep.F = rep.K = Mat::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            rep.K(j, j) = lam * std::pow(eps, -2 * j);
            if (j < n - 1)
                rep.F(j + 1, j) = 1.0;
            else
                rep.F(0, j) = b;
            if (j == 0)
                rep.E(n - 1, 0) = a;
            else
                rep.E(j - 1, j) = a * b + qint_c(j, eps) * (lam * std::pow(eps, 1 - j) - std::pow(eps, j - 1) / lam) /
                                              (eps - 1.0 / eps);
        }
        return rep;
    }
    throw RepError("build_module: derived specs carry their own matrices");
}

double relation_residual(const ModuleRep& rep) {
    const cplx eps = rep.epsilon();
    const Mat Kinv = diag_inverse_or_solve(rep.K);
    const double r1 = rel_diff(rep.K * rep.E * Kinv, eps * eps * rep.E);
    const double r2 = rel_diff(rep.K * rep.F * Kinv, rep.F / (eps * eps));
    const double r3 = rel_diff(rep.E * rep.F - rep.F * rep.E, (rep.K - Kinv) / (eps - 1.0 / eps));
    return std::max({r1, r2, r3});
}

Mat act(const ModuleRep& rep, const PBW<Cyclo>& a) {
    const CycloField* f = a.ctx();
    if (f && (f->n != rep.n || f->d != rep.d)) throw RepError("act: element and module use different roots of unity");
    const Mat Kinv = diag_inverse_or_solve(rep.K);
    std::map<int, Mat> powE, powF, powK, powKinv;
    auto power = [](std::map<int, Mat>& cache, const Mat& base, int k) -> const Mat& {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        return cache.emplace(k, mat_pow(base, k)).first->second;
    };
    Mat out = Mat::Zero(rep.dim, rep.dim);
    for (const auto& [m, v] : a.terms()) {
        const Mat& Fm = power(powF, rep.F, m.t);
        const Mat& Km = m.s >= 0 ? power(powK, rep.K, m.s) : power(powKinv, Kinv, -m.s);
        const Mat& Em = power(powE, rep.E, m.r);
        out += v.eval() * (Fm * Km * Em);
    }
    return out;
}

CentralCharacter character_closed_form(const ModuleSpec& spec, const ScalarContext& ctx) {
    const cplx eps = eps_of(ctx);
    const int n = ctx.n;
    const cplx qd = eps - 1.0 / eps;
    if (const auto* hw = std::get_if<HighestWeightSpec>(&spec)) {
        const double sg = hw->sign;
        const cplx c = sg * (std::pow(eps, hw->r + 1) + std::pow(eps, -hw->r - 1)) / (qd * qd);
        return {0.0, 0.0, sg, c};
    }
    if (const auto* g = std::get_if<GenericSpec>(&spec)) {
        const cplx lam = g->lambda, a = g->a, b = g->b;
        cplx prod = 1.0;
        for (int j = 1; j < n; ++j)
            prod *= a * b + qint_c(j, eps) * (lam * std::pow(eps, 1 - j) - std::pow(eps, j - 1) / lam) / qd;
        CentralCharacter chi;
        chi.x = -std::pow(qd, n) * std::pow(lam, -n) * a * prod;
        chi.y = std::pow(qd, n) * b;
        chi.z = std::pow(lam, n);
        chi.c = a * b + (lam * eps + 1.0 / (lam * eps)) / (qd * qd);
        return chi;
    }
    throw RepError("closed-form character needs a standard module");
}

CentralCharacter character_from_action(const ModuleRep& rep, double tol) {
    const CycloField* f = CycloField::get(rep.n, rep.d);
    const Z0Generators g = z0_generators(f);
    CentralCharacter chi;
    chi.x = scalar_of(act(rep, g.x), tol, "x");
    chi.y = scalar_of(act(rep, g.y), tol, "y");
    chi.z = scalar_of(act(rep, g.z), tol, "z");
    chi.c = scalar_of(act(rep, casimir<Cyclo>(f)), tol, "Omega");
    return chi;
}

CentralCharacter central_character(const ModuleRep& rep, double tol) {
    const CentralCharacter ext = character_from_action(rep, tol);
    if (std::holds_alternative<DerivedSpec>(rep.spec)) return ext;
    const CentralCharacter cf = character_closed_form(rep.spec, {rep.n, rep.d, Mode::Cyclotomic});
    const double err = std::max({rel_scalar_diff(ext.x, cf.x), rel_scalar_diff(ext.y, cf.y),
                                 rel_scalar_diff(ext.z, cf.z), rel_scalar_diff(ext.c, cf.c)});
    if (err > tol) throw RepError("central character mismatch between closed form and action");
    return cf;
}

double hypersurface_residual(const CentralCharacter& chi, const ScalarContext& ctx) {
    const cplx eps = eps_of(ctx);
    const int n = ctx.n;
    const cplx qd = eps - 1.0 / eps;
    cplx lhs = std::pow(qd, 2 * n);
    double scale = std::abs(lhs);
    for (int j = 0; j < n; ++j) {
        const cplx cj = (std::pow(eps, j + 1) + std::pow(eps, -j - 1)) / (qd * qd);
        lhs *= chi.c - cj;
        scale *= std::max(1.0, std::abs(chi.c - cj));
    }
    const cplx e = -chi.x * chi.z;
    const cplx rhs = e * chi.y + chi.z + 1.0 / chi.z - 2.0;
    scale = std::max({1.0, scale, std::abs(e * chi.y), std::abs(chi.z), std::abs(1.0 / chi.z)});
    return std::abs(lhs - rhs) / scale;
}

ModuleRep dual_module(const ModuleRep& rep) {
    ModuleRep out = rep;
    const Mat Kinv = diag_inverse_or_solve(rep.K);
    out.E = (-(Kinv * rep.E)).transpose();
    out.F = (-(rep.F * rep.K)).transpose();
    out.K = Kinv.transpose();
    out.spec = DerivedSpec{"dual"};
    return out;
}

ClassFlags classify(const CentralCharacter& chi, const ScalarContext& ctx, double tol) {
    ClassFlags fl;
    const bool x0 = std::abs(chi.x) <= tol, y0 = std::abs(chi.y) <= tol;
    fl.diagonal = x0 && y0;
    fl.triangular = x0 || y0;
    fl.cyclic = !x0 && !y0;
    // D = {(0,0,+-1,c_r^{+-}) : 0 <= r <= (n-3)/2}
    const cplx eps = eps_of(ctx);
    const cplx qd = eps - 1.0 / eps;
    if (fl.diagonal)
        for (int sg : {1, -1}) {
            if (std::abs(chi.z - double(sg)) > tol) continue;
            for (int r = 0; r <= (ctx.n - 3) / 2; ++r) {
                const cplx cr = double(sg) * (std::pow(eps, r + 1) + std::pow(eps, -r - 1)) / (qd * qd);
                if (std::abs(chi.c - cr) <= tol * std::max(1.0, std::abs(cr))) fl.singular = true;
            }
        }
    fl.regular = !fl.singular;
    // trace of sigma(tau(chi)) = z - zxy + z^{-1}; semisimple away from +-Id iff trace^2 != 4
    const cplx tr = chi.z - chi.z * chi.x * chi.y + 1.0 / chi.z;
    fl.regular_semisimple = std::abs(tr * tr - 4.0) > tol;
    return fl;
}

std::vector<WeightVector> highest_weight_vectors(const ModuleRep& rep, double tol_kernel) {
    const Mat N = kernel(rep.E, tol_kernel);
    std::vector<WeightVector> out;
    if (N.cols() == 0) return out;
    // K preserves ker(E); diagonalize its restriction
    const Mat A = N.adjoint() * rep.K * N;
    Eigen::ComplexEigenSolver<Mat> es(A);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        Vec v = N * es.eigenvectors().col(i);
        v /= v.norm();
        Eigen::Index arg;
        v.cwiseAbs().maxCoeff(&arg);
        v *= std::abs(v(arg)) / v(arg);
        out.push_back({es.eigenvalues()(i), v});
    }
    std::sort(out.begin(), out.end(), [](const WeightVector& a, const WeightVector& b) {
        Eigen::Index ia, ib;
        a.vector.cwiseAbs().maxCoeff(&ia);
        b.vector.cwiseAbs().maxCoeff(&ib);
        return ia < ib;
    });
    return out;
}

int generated_submodule_dim(const ModuleRep& rep, const Vec& v, double tol) {
    Mat span = v;
    int rank = numerical_rank(span, tol);
    for (;;) {
        Mat grown(rep.dim, span.cols() * 4);
        grown << span, rep.E * span, rep.F * span, rep.K * span;
        const int r = numerical_rank(grown, tol);
        if (r == rank) return rank;
        // orthonormal basis of the grown span
        Eigen::JacobiSVD<Mat> svd(grown, Eigen::ComputeThinU);
        span = svd.matrixU().leftCols(r);
        rank = r;
    }
}

ModuleRep tensor_product(const ModuleRep& a, const ModuleRep& b) {
    if (a.n != b.n || a.d != b.d) throw RepError("tensor_product: modules over different roots of unity");
    ModuleRep t;
    t.n = a.n;
    t.d = a.d;
    t.dim = a.dim * b.dim;
    const Mat ia = Mat::Identity(a.dim, a.dim), ib = Mat::Identity(b.dim, b.dim);
    t.E = kron(a.E, ib) + kron(a.K, b.E);
    t.F = kron(a.F, b.K.inverse()) + kron(ia, b.F);
    t.K = kron(a.K, b.K);
    t.spec = DerivedSpec{"tensor"};
    return t;
}

std::vector<Mat> module_intertwiners(const ModuleRep& rho1, const ModuleRep& rho2, double tol) {
    return intertwiner_space({rho1.E, rho1.F, rho1.K}, {rho2.E, rho2.F, rho2.K}, tol);
}

GenericSpec reindex(const GenericSpec& s, int i, const ScalarContext& ctx) {
    const cplx eps = eps_of(ctx);
    const cplx lam = s.lambda;
    GenericSpec out = s;
    out.lambda = lam * std::pow(eps, -2 * i);
    out.a = s.a + qint_c(i, eps) * (lam * std::pow(eps, 1 - i) - std::pow(eps, i - 1) / lam) / ((eps - 1.0 / eps) * s.b);
    return out;
}

HolonomyResult holonomy_check(cplx lambda, cplx a, cplx b, const ScalarContext& ctx, int steps) {
    if (std::abs(b) == 0.0) throw RepError("holonomy_check needs b != 0");
    const int n = ctx.n;
    if (steps <= 0) steps = n;
    const cplx eps = eps_of(ctx);
    auto gamma = [&](double t) {
        GenericSpec s;
        s.lambda = lambda * std::polar(1.0, -4.0 * M_PI * ctx.d * t / n);
        s.a = a + t * (lambda - 1.0 / lambda) / (b * (eps - 1.0 / eps));
        s.b = b;
        return s;
    };
    HolonomyResult res;
    // sample the path; the standard frame is continuous along it
    GenericSpec end = gamma(0.0);
    for (int k = 1; k <= steps; ++k) end = gamma(static_cast<double>(k) / steps);
    const GenericSpec start = gamma(0.0);
    const GenericSpec expected = reindex(start, 1, ctx);
    res.path_residual = std::max(std::abs(end.lambda - expected.lambda), std::abs(end.a - expected.a));

    const ModuleRep v0 = build_module(start, ctx);
    const ModuleRep v1 = build_module(end, ctx);
    const CentralCharacter c0 = central_character(v0), c1 = central_character(v1);
    res.closure_residual = std::max({rel_scalar_diff(c1.x, c0.x), rel_scalar_diff(c1.y, c0.y),
                                     rel_scalar_diff(c1.z, c0.z), rel_scalar_diff(c1.c, c0.c)});

    const auto space = module_intertwiners(v0, v1);
    if (space.size() != 1) throw RepError("holonomy_check: intertwiner space is not one dimensional");
    res.intertwiner = space.front();

    Mat G = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) G(j, j) = std::pow(b, static_cast<double>(j) / n);
    Mat P = G * res.intertwiner * G.inverse();
    P /= P(0, 1 % n);
    res.permutation = P;
    Mat shift = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) shift(i, (i + 1) % n) = 1.0;
    res.permutation_residual = (P - shift).cwiseAbs().maxCoeff();

    // transporting n times: V_k -> V_{k+1} along the reindexed loops returns to V_0
    Mat comp = Mat::Identity(n, n);
    GenericSpec cur = start;
    for (int k = 0; k < n; ++k) {
        const GenericSpec nxt = reindex(cur, 1, ctx);
        const auto sp = module_intertwiners(build_module(cur, ctx), build_module(nxt, ctx));
        if (sp.size() != 1) throw RepError("holonomy_check: intertwiner space is not one dimensional");
        comp = sp.front() * comp;
        cur = nxt;
    }
    comp /= comp(0, 0);
    res.power_residual = (comp - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    return res;
}

}  // namespace uqeps
