#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace uqeps {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Orthonormal basis (columns) of ker(A); singular values below rel_tol * s_max count as zero.
Mat kernel(const Mat& A, double rel_tol = 1e-10);

/// Numerical rank with the same relative threshold.
int numerical_rank(const Mat& A, double rel_tol = 1e-10);

/// Basis of {X : X A_k = B_k X for all k}, each as a matrix (rows = dim B, cols = dim A).
std::vector<Mat> intertwiner_space(const std::vector<Mat>& A, const std::vector<Mat>& B, double rel_tol = 1e-10);

Mat kron(const Mat& a, const Mat& b);

/// max|a - b| / max(1, max|b|)
double rel_diff(const Mat& a, const Mat& b);

/// Deterministic order on complex numbers: lexicographic on (Re, Im) after rounding to a 1e-9 grid.
bool complex_less(cplx a, cplx b);

/// Match two multisets of complex numbers greedily in sorted order; returns max distance.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

/// q-integer [l] evaluated at a complex q.
cplx qint_c(int l, cplx q);

/// Coefficients of det(tI - A), highest degree first (leading 1).
std::vector<cplx> char_poly(const Mat& A);

/// UQEPS_THREADS if set and positive, otherwise the hardware concurrency.
int thread_count();

}  // namespace uqeps
