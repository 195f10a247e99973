#pragma once

#include <array>
#include <vector>

#include "uqeps/modrep.hpp"
#include "uqeps/scalar.hpp"

namespace uqeps {

class ColorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// tr(K f)
cplx qtrace(const ModuleRep& rep, const Mat& f);
cplx qdim(const ModuleRep& rep);

/// tr(K) on V_r^{sign} as an exact element of Q(eps): sign * sum_j eps^{r-2j}.
Cyclo qdim_exact(int r, int sign, const CycloField* f);

/// V_r^+ for a color r.
ModuleRep color_module(int r, const ScalarContext& ctx);

bool admissible(int i, int j, int k, int n);

/// How the trivalent vertices are scaled.
///  cg:    coefficient of v_0 (x) v_{(i+j-k)/2} in Y(v_0) is 1
///  theta: the vertex built from cups on V_1 strands and the projections V_1^{(x)r} -> V_r, so that
///         its closure with the mirrored vertex is Theta(i,j,k) / ((-1)^k [k+1])
enum class Gauge { cg, theta };

struct Intertwiner {
    int k = 0, i = 0, j = 0;
    Mat map;  // V_k -> V_i (x) V_j
};

Intertwiner clebsch_gordan(int i, int j, int k, const ScalarContext& ctx, Gauge g = Gauge::cg);

/// The formula with all four brackets read as q-factorials.
cplx theta(int a, int b, int k, const ScalarContext& ctx);

/// Closed theta network: (mirrored vertex o vertex) on V_k times the loop value (-1)^k [k+1], computed
/// from the strand construction. Independent of the formula above.
cplx theta_network(int a, int b, int k, const ScalarContext& ctx);

struct SixJRaw {
    cplx value;
    double residual = 0;  // relative least-squares residual of the whole system
};

/// {a b l; c k j}: (id (x) Y^j_{bc}) Y^k_{aj} = sum_l {a b l; c k j} (Y^l_{ab} (x) id) Y^k_{lc}.
/// Zero when a triple is not admissible. Needs a + b + c <= n - 2.
SixJRaw sixj_raw(int a, int b, int l, int c, int k, int j, const ScalarContext& ctx, Gauge g = Gauge::theta);

/// Psi(a,b,f;e,d,c) = (-1)^f/[f+1] sqrt(Theta(a,b,f)Theta(d,e,f)/(Theta(a,c,d)Theta(b,c,e))) {a b f; e d c}
cplx sixj_normalized(int a, int b, int f, int e, int d, int c, const ScalarContext& ctx, Gauge g = Gauge::theta);

/// Every tuple (a,b,c,d,e,f,g,h,k) of the identity with all symbols on both sides inside a+b+e <= n-2.
std::vector<std::array<int, 9>> eb_configurations(int n);

/// max abs(LHS - RHS) of the identity over eb_configurations(n).
struct EBResult {
    int configurations = 0;
    int nontrivial = 0;  // configurations where some side is nonzero
    double max_residual = 0;
};
EBResult elliot_biedenharn(const ScalarContext& ctx, Gauge g = Gauge::theta);

/// Tetrahedral images of (a,b,f;e,d,c) under column permutations and two-column row swaps.
std::vector<std::array<int, 6>> tetrahedral_images(const std::array<int, 6>& s);

}  // namespace uqeps
