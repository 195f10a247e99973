#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "uqeps/linalg.hpp"
#include "uqeps/pbw.hpp"
#include "uqeps/scalar.hpp"

namespace uqeps {

/// V_r^{sign}, 0 <= r <= n-1
struct HighestWeightSpec {
    int r = 0;
    int sign = 1;
};

/// V(lambda, a, b)
struct GenericSpec {
    cplx lambda{1.0, 0.0};
    cplx a{0.0, 0.0};
    cplx b{0.0, 0.0};
};

/// Anything obtained by a construction (dual, twist, restriction ...).
struct DerivedSpec {
    std::string how;
};

using ModuleSpec = std::variant<HighestWeightSpec, GenericSpec, DerivedSpec>;

struct ModuleRep {
    int n = 3;
    int d = 1;
    int dim = 0;
    Mat E, F, K;
    ModuleSpec spec;

    cplx epsilon() const { return std::polar(1.0, 2.0 * M_PI * d / n); }
};

struct CentralCharacter {
    cplx x, y, z, c;
};

class RepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ModuleRep build_module(const ModuleSpec& spec, const ScalarContext& ctx);

/// Max relative residual of KEK^{-1} = eps^2 E, KFK^{-1} = eps^{-2} F, [E,F] = (K-K^{-1})/(eps-eps^{-1}).
double relation_residual(const ModuleRep& rep);

/// Matrix of a PBW element over Q(eps) acting on rep.
Mat act(const ModuleRep& rep, const PBW<Cyclo>& a);

/// Closed formulas for the character of V_r^{+-} or V(lambda, a, b).
CentralCharacter character_closed_form(const ModuleSpec& spec, const ScalarContext& ctx);

/// Scalars by which x, y, z and Omega act; throws if an action is not scalar.
CentralCharacter character_from_action(const ModuleRep& rep, double tol = 1e-9);

/// Both of the above, cross-checked to tol (relative); DerivedSpec uses extraction only.
CentralCharacter central_character(const ModuleRep& rep, double tol = 1e-9);

/// eps^{-2n}... residual of the hypersurface relation for either sign, relative.
double hypersurface_residual(const CentralCharacter& chi, const ScalarContext& ctx);

/// a acts on V* as the transpose of S(a).
ModuleRep dual_module(const ModuleRep& rep);

struct ClassFlags {
    bool diagonal = false;
    bool triangular = false;
    bool regular = false;
    bool singular = false;
    bool regular_semisimple = false;
    bool cyclic = false;
};

ClassFlags classify(const CentralCharacter& chi, const ScalarContext& ctx, double tol = 1e-9);

struct WeightVector {
    cplx weight;
    Vec vector;
};

/// Basis of ker(E) split into K-eigenvectors.
std::vector<WeightVector> highest_weight_vectors(const ModuleRep& rep, double tol_kernel = 1e-10);

/// Dimension of the submodule generated by v.
int generated_submodule_dim(const ModuleRep& rep, const Vec& v, double tol = 1e-10);

/// rho1 (x) rho2 with Delta(E) = E x 1 + K x E, Delta(F) = F x K^{-1} + 1 x F, Delta(K) = K x K.
ModuleRep tensor_product(const ModuleRep& rho1, const ModuleRep& rho2);

/// Intertwiners X with X rho1(g) = rho2(g) X for g in {E, F, K}.
std::vector<Mat> module_intertwiners(const ModuleRep& rho1, const ModuleRep& rho2, double tol = 1e-10);

/// Reindexing (lambda, a) -> (lambda eps^{-2i}, a + [i](...)/b).
GenericSpec reindex(const GenericSpec& s, int i, const ScalarContext& ctx);

struct HolonomyResult {
    Mat intertwiner;        // V(gamma(0)) -> V(gamma(1)) in the standard bases
    Mat permutation;        // same map in the balanced basis u_j = b^{-j/n} v_j, divided by its (0,1) entry
    double permutation_residual = 0;  // distance of `permutation` to (delta_{i+1,j})
    double closure_residual = 0;      // character at t=1 minus character at t=0
    double path_residual = 0;         // endpoint of the sampled path minus the reindexed parameters
    double power_residual = 0;        // n-fold composite minus a multiple of the identity
};

/// Transport along gamma(t) = (lambda e^{-4 pi i d t/n}, a + t(lambda - lambda^{-1})/(b(eps - eps^{-1})), b).
HolonomyResult holonomy_check(cplx lambda, cplx a, cplx b, const ScalarContext& ctx, int steps = 0);

}  // namespace uqeps
