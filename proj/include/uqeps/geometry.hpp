#pragma once

#include <array>
#include <vector>

#include "uqeps/linalg.hpp"
#include "uqeps/modrep.hpp"
#include "uqeps/scalar.hpp"

namespace uqeps {

/// A point of Spec(Z_0) in the coordinates (x, y, z).
struct Z0Character {
    cplx x{0.0, 0.0};
    cplx y{0.0, 0.0};
    cplx z{1.0, 0.0};
};

using Mat2 = Eigen::Matrix2cd;

Z0Character group_identity();
Z0Character group_mul(const Z0Character& g, const Z0Character& h);
Z0Character group_inv(const Z0Character& g);

/// psi_1(g): w -> zw - xz and psi_2(g): w -> w/(-zyw + z), as determinant one matrices
/// (principal square root of z).
std::array<Mat2, 2> psi(const Z0Character& g);

/// sigma(g) = +-[[z, -zx], [zy, -zxy + 1/z]]
Mat2 sigma(const Z0Character& g);

/// min(|A - B|, |A + B|), entrywise max norm.
double psl_distance(const Mat2& a, const Mat2& b);

inline Z0Character tau(const CentralCharacter& chi) { return {chi.x, chi.y, chi.z}; }

/// The n values of c over h, counted with multiplicity, in complex_less order.
std::vector<CentralCharacter> tau_fiber(const Z0Character& h, const ScalarContext& ctx);

bool is_singular(const CentralCharacter& chi, const ScalarContext& ctx, double tol = 1e-9);

/// Exact membership test for a character with coordinates in Q(eps).
bool is_singular_exact(const CycloField* f, const Cyclo& x, const Cyclo& y, const Cyclo& z, const Cyclo& c);

/// The n - 1 points (0, 0, +-1, c_r^{+-}), 0 <= r <= (n-3)/2.
std::vector<CentralCharacter> singular_set(const ScalarContext& ctx);

}  // namespace uqeps
