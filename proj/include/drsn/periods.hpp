#ifndef DRSN_PERIODS_HPP
#define DRSN_PERIODS_HPP

#include <vector>

#include "drsn/normalform.hpp"
#include "drsn/series.hpp"
#include "drsn/vfields.hpp"

namespace drsn {

// Planar Hamiltonian beta y2^2 + alpha y1^2 + f(y1) with nondegenerate
// quadratic part and ord(f) >= 3 (f as a univariate jet in y1).
struct PlanarHamiltonian {
    Complex beta;
    Complex alpha;
    UnivariateSeries f;

    static PlanarHamiltonian validate(Complex beta, Complex alpha, UnivariateSeries f);
};

// Coefficients T_0..T_M of the period expansion; T_0 = -1/lambda.
struct PeriodSeries {
    std::vector<Complex> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex operator[](int k) const { return coeffs[static_cast<std::size_t>(k)]; }
};

// Period coefficients through residue extraction:
//   T_k = sigma * 1/2 * (-1)^k binom(-1/2,k) beta^{-1/2} (-alpha)^{-(k+1/2)}
//         * [y1^{2k}] (1 + f(y1)/(alpha y1^2))^{-(k+1/2)},
// principal branches; the loop orientation sigma is fixed so that
// lambda := -1/T_0 is the separatrix eigenvalue with Re > 0 (Im > 0 on ties).
// Needs f to y1-order 2M+2.
PeriodSeries period_series(const PlanarHamiltonian& H, int M);

// lambda = -1/T_0; S = antiderivative of T with S(0) = 0; h = inverse of -S;
// c = dh/dv - lambda.
struct PeriodInvariant {
    Complex lambda;
    UnivariateSeries c_jet;
};
PeriodInvariant invariant_from_periods(const PeriodSeries& T);

// The Painleve-I saddle-node at infinity (Boutroux chart), zeta = i/sqrt(6):
//   x^2 d/dx + (-(4/5) y2 + (2/5) x y1 + (2 zeta/5) x) d/dy1
//            + (-(24/5) y1^2 - (48 zeta/5) y1 + (3/5) x y2) d/dy2
VectorField painleve1_field(int order);

inline Complex painleve1_zeta() { return Complex{0.0, 1.0} / std::sqrt(6.0); }

// Restriction data on {x = 0}: beta = -2/5, alpha = 24 zeta/5, f = (8/5) y1^3.
PlanarHamiltonian painleve1_hamiltonian(int f_order = 8);

// Closed form T_k = -5^{k+1} binom(-1/2,k) binom(-(k+1/2),2k) 8^{-(k+1)} (3 zeta)^{-(3k+1/2)}.
Complex painleve1_Thk_closed_form(int k);

// Unimodular fibered linear change diagonalizing the y-linear part of the
// Painleve-I field to diag(-lambda, lambda), Re(lambda) > 0.  Returns the
// change, the transformed field and lambda.
struct Painleve1Diagonalized {
    Diffeo change;
    VectorField field;
    Complex lambda;
};
Painleve1Diagonalized painleve1_diagonalized(int order);

} // namespace drsn

#endif
