#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uqeps/fusion.hpp"
#include "uqeps/linalg.hpp"

namespace uqeps {

class DilogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (w0, 1/(1-w0), 1 - 1/w0)
std::array<cplx, 3> cross_ratio_moduli(cplx w0);

/// round(Im(log w0 + log w1 + log w2) / pi); always odd.
int log_defect(cplx w0);

struct QHTetra {
    int b = 1;  // *_b
    cplx w0{0.5, 0.5};
    std::array<int, 3> f{0, 0, 0};
    std::array<int, 3> c{0, 0, 1};
};

/// Throws DilogError when w0 is degenerate, or the flattening or charge condition fails.
void validate(const QHTetra& t);

struct RootModuli {
    std::array<cplx, 3> w;
    std::array<long, 3> exponent;  // (w_j')^n = w_j exp(i pi exponent_j), exponent_j = (n+1)(f_j - *_b c_j)
};

RootModuli root_moduli(const QHTetra& t, int n);

/// omega(u', v' | k), n-periodic in k.
cplx omega(cplx u, cplx v, int k, int n);

/// g(x) = prod_{j=1}^{n-1} (1 - x zeta^{-j})^{j/n}; sets *near_cut when some factor is within 1e-8 of 0.
cplx g_fun(cplx x, int n, bool* near_cut = nullptr);
cplx h_fun(cplx x, int n, bool* near_cut = nullptr);

/// Rows i n + j, columns k n + l.
Mat Ln_matrix(cplx u, cplx v, int n);
/// Rows k n + l, columns i n + j; the displayed inverse.
Mat Ln_inverse(cplx u, cplx v, int n);

/// Which face carries each of the letters i, j, k, l.
using FaceRoles = std::array<int, 4>;
inline constexpr FaceRoles kDefaultFaceRoles{1, 3, 0, 2};

/// Four-slot tensor indexed by the states of the faces delta_0 .. delta_3.
struct FaceTensor {
    int n = 3;
    std::vector<cplx> a;
    cplx operator()(int s0, int s1, int s2, int s3) const { return a[((s0 * n + s1) * n + s2) * n + s3]; }
};

/// Prefactor times L_n^{*_b}(w0', 1/w1'), letters placed on faces by roles.
FaceTensor Rn_tetra(const QHTetra& t, int n, const FaceRoles& roles = kDefaultFaceRoles);

struct IntegerSolution {
    std::vector<long> x;
    std::vector<std::vector<long>> kernel;  // Z-basis of the solutions of A x = 0
};

/// Exact integer solution of A x = b by column-style Hermite reduction; nullopt if none exists.
std::optional<IntegerSolution> solve_integer(const std::vector<std::vector<long>>& A, const std::vector<long>& b);

struct TransitPattern {
    int n = 3;
    cplx x, y;
    std::array<std::array<int, 4>, 5> vertices;  // Delta_i = {0..4} \ {i}, increasing
    std::array<QHTetra, 5> tetra;
    std::vector<int> T{1, 3}, Tp{0, 2, 4};
    std::vector<std::array<int, 2>> common_edges;  // the nine edges other than (1, 3)
    std::vector<std::vector<long>> kernel;         // other solutions: tetra.f/c plus integer combinations
    bool certified_minimal = false;                // norm equals the per-tetrahedron lower bound
};

/// Flattenings and charges from the least-norm integer solution (ties: lexicographically smallest).
TransitPattern build_23_transit(cplx x, cplx y, int n, int orientation = 1);

/// Replace the decorations with pattern solution + sum coeff[i] kernel[i].
TransitPattern shifted(const TransitPattern& p, const std::vector<long>& coeff);

/// W'_T(e) = W'_T'(e) and C_T(e) = C_T'(e) at every common edge.
struct TransitResidual {
    double w_prime = 0;
    bool charges_equal = true;
    bool tetra_valid = true;
};
TransitResidual transit_residual(const TransitPattern& p);

/// External faces of the bipyramid, in increasing order of their vertex triples.
std::vector<std::array<int, 3>> external_faces();

/// Tensor of one side, indexed by the six external face states (row-major in external_faces() order).
std::vector<cplx> contract(const TransitPattern& p, bool primed, const FaceRoles& roles = kDefaultFaceRoles);

struct FiveTerm {
    double residual = 0;        // max |R(T) - R(T')| / max(|R(T)|, |R(T')|)
    double phase_residual = 0;  // the same after the best global n-th root of unity on R(T')
    int phase = 0;              // that root's exponent
};

FiveTerm five_term(const TransitPattern& p, const FaceRoles& roles = kDefaultFaceRoles);
double five_term_check(cplx x, cplx y, int n);

struct ConventionCase {
    FaceRoles roles;
    bool inverse;  // every tetrahedron with *_b = -1
    double residual;
};

struct ConventionSearch {
    std::vector<ConventionCase> cases;  // all 48, sorted by residual
    std::vector<ConventionCase> passing;
    int classes = 0;  // passing conventions modulo delta_a -> delta_{3-a}
};

ConventionSearch face_convention_search(cplx x, cplx y, int n = 3, double tol = 1e-8);

/// L(x) = -pi^2/6 - 1/2 int_0^x (log t/(1-t) + log(1-t)/t) dt by adaptive quadrature, 0 < x <= 1.
double rogers_L(double x, double* error = nullptr);

/// L(x) - L(y) + L(y/x) - L((1-1/x)/(1-1/y)) + L((1-x)/(1-y))
double classical_five_term(double x, double y);

struct ReductionCandidate {
    int convention;  // which cross-ratio formula
    cplx w0sq, w0;
    cplx u, v;  // L_n arguments (w0', 1/w1')
    double charpoly_residual;
    double scaling_residual;  // worst block of R against the L_n block, up to permutations and diagonal scaling
};

struct ReductionReport {
    bool pass = false;
    double best = 0;
    double best_scaling = 0;
    double block_spread = 0;   // how far the n blocks of R are from one another, same equivalence
    std::vector<cplx> points;  // 0, f(0), fg(0), fgh(0)
    std::vector<ReductionCandidate> candidates;
};

/// Compares the characteristic polynomial of the fusion R(rho, mu, nu) with those of the candidate L_n.
ReductionReport reduction_check(const ModuleRep& rho, const ModuleRep& mu, const ModuleRep& nu, double tol = 1e-6);

/// min over row and column permutations of |B - D1 P A Q D2| / |B|, D1 and D2 diagonal (square, same size).
double scaling_distance(const Mat& A, const Mat& B);

/// The six classical cross-ratio conventions of four points.
std::array<cplx, 6> cross_ratios(cplx a, cplx b, cplx c, cplx d);

}  // namespace uqeps
