#include "uqeps/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace uqeps {

Mat kernel(const Mat& A, double rel_tol) {
    const Eigen::Index cols = A.cols();
    if (A.rows() == 0) return Mat::Identity(cols, cols);
    // pad to at least square so that the full V is available
    Mat work = A;
    if (A.rows() < cols) {
        work = Mat::Zero(cols, cols);
        work.topRows(A.rows()) = A;
    }
    Eigen::BDCSVD<Mat> svd(work, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    const double cut = smax > 0 ? rel_tol * smax : std::numeric_limits<double>::min();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixV().rightCols(cols - rank);
}

int numerical_rank(const Mat& A, double rel_tol) {
    if (A.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(A);
    const auto& s = svd.singularValues();
    if (s(0) == 0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++rank;
    return rank;
}

namespace {

bool is_diagonal(const Mat& a) {
    return a.rows() == a.cols() && (a - Mat(a.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

std::vector<Mat> intertwiner_space(const std::vector<Mat>& A, const std::vector<Mat>& B, double rel_tol) {
    const Eigen::Index p = B.front().rows(), m = A.front().rows();
    // a diagonal pair forces X(r, c) = 0 unless B(r, r) = A(c, c); only the surviving entries are unknowns
    std::vector<std::array<Eigen::Index, 2>> slots;
    std::vector<size_t> rest;
    for (size_t k = 0; k < A.size(); ++k) {
        if (slots.empty() && is_diagonal(A[k]) && is_diagonal(B[k])) {
            const double s = std::max({1.0, A[k].cwiseAbs().maxCoeff(), B[k].cwiseAbs().maxCoeff()});
            for (Eigen::Index c = 0; c < m; ++c)
                for (Eigen::Index r = 0; r < p; ++r)
                    if (std::abs(B[k](r, r) - A[k](c, c)) <= 1e-9 * s) slots.push_back({r, c});
            if (slots.empty()) return {};
            continue;
        }
        rest.push_back(k);
    }
    if (slots.empty()) {
        for (Eigen::Index c = 0; c < m; ++c)
            for (Eigen::Index r = 0; r < p; ++r) slots.push_back({r, c});
        rest.clear();
        for (size_t k = 0; k < A.size(); ++k) rest.push_back(k);
    }
    // (X A - B X)(i, j) = sum_c X(i, c) A(c, j) - sum_r B(i, r) X(r, j)
    const Eigen::Index u = static_cast<Eigen::Index>(slots.size());
    Mat sys = Mat::Zero(static_cast<Eigen::Index>(rest.size()) * p * m, u);
    for (size_t t = 0; t < rest.size(); ++t) {
        const Mat& a = A[rest[t]];
        const Mat& b = B[rest[t]];
        const Eigen::Index off = static_cast<Eigen::Index>(t) * p * m;
        for (Eigen::Index s = 0; s < u; ++s) {
            const auto [r, c] = slots[s];
            for (Eigen::Index j = 0; j < m; ++j) sys(off + j * p + r, s) += a(c, j);
            for (Eigen::Index i = 0; i < p; ++i) sys(off + c * p + i, s) -= b(i, r);
        }
    }
    const Mat ker = kernel(sys, rel_tol);
    std::vector<Mat> out;
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
        Mat X = Mat::Zero(p, m);
        for (Eigen::Index s = 0; s < u; ++s) X(slots[s][0], slots[s][1]) = ker(s, k);
        out.push_back(X);
    }
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double rel_diff(const Mat& a, const Mat& b) {
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    return (a - b).cwiseAbs().maxCoeff() / scale;
}

bool complex_less(cplx a, cplx b) {
    auto grid = [](double v) { return std::round(v * 1e9); };
    const double ar = grid(a.real()), br = grid(b.real());
    if (ar != br) return ar < br;
    return grid(a.imag()) < grid(b.imag());
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    // greedy nearest matching is robust for well separated sets
    double worst = 0;
    std::vector<bool> used(b.size(), false);
    for (const cplx& u : a) {
        double best = std::numeric_limits<double>::infinity();
        size_t arg = 0;
        for (size_t j = 0; j < b.size(); ++j)
            if (!used[j] && std::abs(u - b[j]) < best) {
                best = std::abs(u - b[j]);
                arg = j;
            }
        used[arg] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

cplx qint_c(int l, cplx q) { return (std::pow(q, l) - std::pow(q, -l)) / (q - 1.0 / q); }

std::vector<cplx> char_poly(const Mat& A) {
    Eigen::ComplexEigenSolver<Mat> es(A, false);
    std::vector<cplx> coeffs{1.0};
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx lam = es.eigenvalues()(i);
        std::vector<cplx> next(coeffs.size() + 1, 0.0);
        for (size_t k = 0; k < coeffs.size(); ++k) {
            next[k] += coeffs[k];
            next[k + 1] -= lam * coeffs[k];
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

int thread_count() {
    if (const char* env = std::getenv("UQEPS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace uqeps
