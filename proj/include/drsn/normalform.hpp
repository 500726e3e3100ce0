#ifndef DRSN_NORMALFORM_HPP
#define DRSN_NORMALFORM_HPP

#include <optional>
#include <string>

#include "drsn/series.hpp"
#include "drsn/vfields.hpp"

namespace drsn {

// Saddle-node input: x-component x^2 (+ tolerated higher-order noise below
// threshold), y-linear part diag(-lambda, lambda), translation and nonlinear
// terms of component order >= 2.
struct SaddleNodeInput {
    VectorField field;
    Complex lambda;

    // Reads lambda off the linear part and checks the presentation.
    static SaddleNodeInput validate(const VectorField& field, double tol = 1e-9);
};

// Parameters (lambda, a1, a2, c1, c2) of the normal form
//   x^2 d/dx + (-lambda + a1 x + c1(v)) y1 d/dy1 + (lambda + a2 x + c2(v)) y2 d/dy2,
// v = y1 y2; c-jets have zero constant coefficient and a common v-order.
struct NormalFormParams {
    Complex lambda;
    Complex a1, a2;
    UnivariateSeries c1_jet, c2_jet;

    int v_order() const { return c1_jet.order(); }
    Complex residue() const { return a1 + a2; }
    // (c2 - c1)/2, the single invariant in the transversally Hamiltonian case
    UnivariateSeries c_jet() const { return (c2_jet - c1_jet) * Complex{0.5, 0.0}; }
};

struct NormalizationResult {
    NormalFormParams params;
    Diffeo conjugacy;      // tangent to the identity, fibered
    VectorField residual;  // push_forward(conjugacy, input) to truncation order
    int guaranteed_v_order = 0;
};

// Trace of the x-linear part of the associated 2x2 system:
// coeff of x*y1 in b1 plus coeff of x*y2 in b2.
Complex residue(const SaddleNodeInput& Y);

// The two-step elimination.  Removes every non-resonant monomial term (k1 != k2,
// divisor lambda (k1 - k2)) by grade, then the resonant terms x^{k0} (y1 y2)^k
// with k0 >= 1, (k0,k) != (1,0) by grade k0+k with k0 decreasing (divisor
// (k0-1) + k (a1+a2)).  Throws Degenerate when a step-2 divisor vanishes.
NormalizationResult normalize(const SaddleNodeInput& Y, int order);

// Builds the normal-form field for given parameters.
VectorField normal_form_field(const NormalFormParams& p, int order);

// Orbit equivalence under (theta, eps): theta rescales v in the c-jets,
// eps = 1 swaps (lambda, a1, a2, c1, c2) -> (-lambda, a2, a1, c2, c1).
// Returns a witness (theta, eps) or nullopt.
struct OrbitWitness {
    Complex theta;
    int eps = 0;
};
std::optional<OrbitWitness> params_equivalent(const NormalFormParams& p, const NormalFormParams& q,
                                              double tol = 1e-9);

// q >= 1: isotropies are diag(1,t1,t2) with (t1 t2)^q = 1; q = 0 means both
// c-jets vanish and t1 t2 is unconstrained.
struct IsotropyDescription {
    int q = 0;
    bool unconstrained() const { return q == 0; }
};
IsotropyDescription isotropy_group(const NormalFormParams& p);

// For a transversally Hamiltonian normal form (a1+a2 = 1, c1 = -c2),
// verifies by conjugation that diag(1, alpha, 1/alpha) is an isotropy.
bool symplectic_isotropy_check(const NormalFormParams& p, Complex alpha, double tol = 1e-10);

} // namespace drsn

#endif
