#include "uqeps/geometry.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "uqeps/qalgebra.hpp"

namespace uqeps {

namespace {

cplx casimir_c(const ScalarContext& ctx, int j, int sign) {
    const cplx eps = ctx.epsilon();
    const cplx qd = eps - 1.0 / eps;
    return double(sign) * (std::pow(eps, j + 1) + std::pow(eps, -j - 1)) / (qd * qd);
}

}  // namespace

Z0Character group_identity() { return {}; }

Z0Character group_mul(const Z0Character& g, const Z0Character& h) {
    return {h.x + g.x / h.z, h.y + g.y / h.z, g.z * h.z};
}

Z0Character group_inv(const Z0Character& g) { return {-g.z * g.x, -g.y * g.z, 1.0 / g.z}; }

std::array<Mat2, 2> psi(const Z0Character& g) {
    const cplx s = std::sqrt(g.z);
    Mat2 p1, p2;
    p1 << s, -g.x * s, 0.0, 1.0 / s;
    p2 << 1.0 / s, 0.0, -g.y * s, s;
    return {p1, p2};
}

Mat2 sigma(const Z0Character& g) {
    Mat2 m;
    m << g.z, -g.z * g.x, g.z * g.y, -g.z * g.x * g.y + 1.0 / g.z;
    return m;
}

double psl_distance(const Mat2& a, const Mat2& b) {
    return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

std::vector<CentralCharacter> tau_fiber(const Z0Character& h, const ScalarContext& ctx) {
    ctx.validate();
    const int n = ctx.n;
    const cplx eps = ctx.epsilon();
    const cplx qd = eps - 1.0 / eps;
    // monic prod_j (c - c_j^+) minus (e y + z + 1/z - 2)/(eps - 1/eps)^{2n}
    std::vector<cplx> coeffs{1.0};
    for (int j = 0; j < n; ++j) {
        const cplx cj = casimir_c(ctx, j, 1);
        std::vector<cplx> next(coeffs.size() + 1, 0.0);
        for (size_t k = 0; k < coeffs.size(); ++k) {
            next[k] += coeffs[k];
            next[k + 1] -= cj * coeffs[k];
        }
        coeffs = std::move(next);
    }
    const cplx e = -h.x * h.z;
    coeffs[n] -= (e * h.y + h.z + 1.0 / h.z - 2.0) / std::pow(qd, 2 * n);
    Mat comp = Mat::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[n - i];
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(roots.begin(), roots.end(), complex_less);
    std::vector<CentralCharacter> out;
    for (const cplx& c : roots) out.push_back({h.x, h.y, h.z, c});
    return out;
}

bool is_singular(const CentralCharacter& chi, const ScalarContext& ctx, double tol) {
    if (std::abs(chi.x) > tol || std::abs(chi.y) > tol) return false;
    for (const auto& s : singular_set(ctx))
        if (std::abs(chi.z - s.z) <= tol && std::abs(chi.c - s.c) <= tol * std::max(1.0, std::abs(s.c))) return true;
    return false;
}

bool is_singular_exact(const CycloField* f, const Cyclo& x, const Cyclo& y, const Cyclo& z, const Cyclo& c) {
    if (!x.is_zero() || !y.is_zero()) return false;
    for (int sg : {1, -1}) {
        if (!(z == Cyclo(long(sg)))) continue;
        for (int r = 0; r <= (f->n - 3) / 2; ++r)
            if (c == casimir_value(f, r, sg)) return true;
    }
    return false;
}

std::vector<CentralCharacter> singular_set(const ScalarContext& ctx) {
    std::vector<CentralCharacter> out;
    for (int sg : {1, -1})
        for (int r = 0; r <= (ctx.n - 3) / 2; ++r) out.push_back({0.0, 0.0, double(sg), casimir_c(ctx, r, sg)});
    return out;
}

}  // namespace uqeps
