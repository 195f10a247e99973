#pragma once

#include <vector>

#include "uqeps/geometry.hpp"
#include "uqeps/modrep.hpp"

namespace uqeps {

class FusionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TensorRep {
    ModuleRep rho, mu;
    ModuleRep product;  // Delta(E), Delta(F), Delta(K) on C^n (x) C^n
    Z0Character h;
};

/// Throws unless tau(rho) tau(mu) != +-identity.
TensorRep tensor_rep(const ModuleRep& rho, const ModuleRep& mu);

struct IdempotentSet {
    std::vector<CentralCharacter> fiber;  // tau_fiber(h) order
    std::vector<Mat> projectors;
    std::vector<cplx> eigenvalues;  // spectrum of Delta(Omega) matched to the fiber
};

IdempotentSet idempotents(const TensorRep& t);

/// V(lambda, a, b) with character chi: lambda the principal n-th root of z, b = y/(eps-eps^{-1})^n, a from c.
ModuleRep standard_model(const CentralCharacter& chi, const ScalarContext& ctx);

struct EvaluationMap {
    std::vector<CentralCharacter> fiber;
    std::vector<ModuleRep> models;
    Mat K;  // V (x) M(h) -> V_rho (x) V_mu, index v * n + chi
};

EvaluationMap evaluation_map(const ModuleRep& rho, const ModuleRep& mu);

/// max over a in {E, F, K} of |K^{-1} Delta(a) K - blockdiag(rho_chi(a))|, relative.
double twistcop_residual(const EvaluationMap& ev, const ModuleRep& rho, const ModuleRep& mu);

struct SixJOperator {
    Mat R;                         // M(fgh) (x) M(gh) -> M(fg) (x) M(fgh)
    double factor_residual = 0;    // distance of RightDown^{-1} LeftDown to Id_V (x) R
    double modpent_residual = 0;   // |RightDown (Id (x) R) - LeftDown|, relative
    std::vector<CentralCharacter> fiber_fg, fiber_gh, fiber_fgh;
};

/// With permute_left, the chi_l-indexed blocks of LeftDown use the cyclically shifted assignment
/// (block l gets the map of block l+1); only used to probe the blockwise reading.
SixJOperator sixj_operator(const ModuleRep& rho, const ModuleRep& mu, const ModuleRep& nu, double tol = 1e-6,
                           bool permute_left = false);

/// Both sides of R12 R13 R23 = R23 R12 with character-indexed blocks; max relative entrywise residual.
double pentagon_check(const ModuleRep& kappa, const ModuleRep& rho, const ModuleRep& mu, const ModuleRep& nu);

}  // namespace uqeps
