#include "drsn/periods.hpp"

#include <algorithm>
#include <cmath>

namespace drsn {

PlanarHamiltonian PlanarHamiltonian::validate(Complex beta, Complex alpha, UnivariateSeries f) {
    double scale = std::max(1.0, f.max_abs());
    if (std::abs(beta) <= ZETA_TOL * scale || std::abs(alpha) <= ZETA_TOL * scale)
        throw DegenerateQuadraticPart();
    if (!f.is_zero() && f.order_of() < 3)
        throw MalformedInput("f must have order >= 3 in y1");
    return PlanarHamiltonian{beta, alpha, std::move(f)};
}

static bool lambda_branch_ok(Complex lam) {
    if (lam.real() > 0.0) return true;
    return lam.real() == 0.0 && lam.imag() > 0.0;
}

PeriodSeries period_series(const PlanarHamiltonian& H, int M) {
    const int L = 2 * M; // y1-order needed inside the unit power
    if (H.f.order() < 2 * M + 2)
        throw MalformedInput("f must be given to y1-order 2M+2 for M period coefficients");
    // u(y1) = 1 + f(y1)/(alpha y1^2)
    UnivariateSeries u(L);
    u.set(0, Complex{1.0, 0.0});
    for (int d = 3; d <= H.f.order(); ++d) {
        if (d - 2 > L) break;
        u.set(d - 2, u[d - 2] + H.f[d] / H.alpha);
    }
    PeriodSeries T;
    T.coeffs.resize(static_cast<std::size_t>(M) + 1);
    const Complex beta_inv_sqrt = std::pow(H.beta, Complex{-0.5, 0.0});
    for (int k = 0; k <= M; ++k) {
        UnivariateSeries up = binomial_power(u, -(double(k) + 0.5));
        Complex residue_coeff = up[2 * k];
        Complex val = 0.5 * std::pow(-1.0, k) * binomial(Complex{-0.5, 0.0}, k) * beta_inv_sqrt *
                      std::pow(-H.alpha, -(double(k) + 0.5)) * residue_coeff;
        T.coeffs[static_cast<std::size_t>(k)] = val;
    }
    if (std::abs(T.coeffs[0]) == 0.0) throw ZeroLeadingPeriod();
    if (!lambda_branch_ok(-1.0 / T.coeffs[0]))
        for (Complex& t : T.coeffs) t = -t;
    return T;
}

PeriodInvariant invariant_from_periods(const PeriodSeries& T) {
    const int M = T.order();
    double scale = 0.0;
    for (Complex t : T.coeffs) scale = std::max(scale, std::abs(t));
    if (std::abs(T[0]) <= ZETA_TOL * std::max(1.0, scale)) throw ZeroLeadingPeriod();

    UnivariateSeries Ts(M);
    for (int k = 0; k <= M; ++k) Ts.set(k, T[k]);
    UnivariateSeries S = antiderivative(Ts);     // order M+1
    UnivariateSeries h = univariate_inverse(-S); // h(v): -S(h(v)) = v
    UnivariateSeries dh = derivative(h);         // lambda + c(v), order M

    PeriodInvariant out;
    out.lambda = -1.0 / T[0];
    out.c_jet = UnivariateSeries(M);
    for (int k = 1; k <= M; ++k) out.c_jet.set(k, dh[k]);
    out.c_jet.trim();
    return out;
}

VectorField painleve1_field(int order) {
    const Complex z = painleve1_zeta();
    VectorField Y(order);
    Y.bx.add_term({2, 0, 0}, Complex{1.0, 0.0});
    Y.b1.add_term({0, 0, 1}, Complex{-0.8, 0.0});
    Y.b1.add_term({1, 1, 0}, Complex{0.4, 0.0});
    Y.b1.add_term({1, 0, 0}, 0.4 * z);
    Y.b2.add_term({0, 2, 0}, Complex{-4.8, 0.0});
    Y.b2.add_term({0, 1, 0}, -9.6 * z);
    Y.b2.add_term({1, 0, 1}, Complex{0.6, 0.0});
    return Y;
}

PlanarHamiltonian painleve1_hamiltonian(int f_order) {
    UnivariateSeries f(f_order);
    f.set(3, Complex{1.6, 0.0});
    return PlanarHamiltonian::validate(Complex{-0.4, 0.0}, 4.8 * painleve1_zeta(), f);
}

Complex painleve1_Thk_closed_form(int k) {
    if (k < 0 || k > 64) throw MalformedInput("k out of range");
    const Complex z3 = 3.0 * painleve1_zeta();
    return -std::pow(5.0, k + 1) * binomial(Complex{-0.5, 0.0}, k) *
           binomial(-(double(k) + 0.5), 2 * k) * std::pow(8.0, -(k + 1)) *
           std::pow(z3, -(3.0 * k + 0.5));
}

Painleve1Diagonalized painleve1_diagonalized(int order) {
    const Complex z = painleve1_zeta();
    // y-linear block A = [[0, -4/5], [-48 zeta/5, 0]], eigenvalues +-lambda,
    // lambda^2 = 192 zeta / 25.
    Complex lam = std::sqrt(192.0 * z) / 5.0;
    if (!lambda_branch_ok(lam)) lam = -lam;
    // eigenvector for -lambda: (1, 5 lambda/4); for +lambda: (1, -5 lambda/4).
    // Scale to a unimodular basis so the composed change is transversally
    // symplectic and the c-jets land on the canonical v-scale.
    std::array<std::array<Complex, 2>, 2> P = {{{Complex{1.0, 0.0}, Complex{1.0, 0.0}},
                                                {1.25 * lam, -1.25 * lam}}};
    Complex det = P[0][0] * P[1][1] - P[0][1] * P[1][0];
    Complex s = std::sqrt(det);
    for (auto& row : P)
        for (Complex& v : row) v /= s;
    det = P[0][0] * P[1][1] - P[0][1] * P[1][0];
    std::array<std::array<Complex, 2>, 2> Pinv = {{{P[1][1] / det, -P[0][1] / det},
                                                   {-P[1][0] / det, P[0][0] / det}}};
    Painleve1Diagonalized out;
    out.change = Diffeo::linear_fibered(Pinv, order);
    out.field = push_forward(out.change, painleve1_field(order));
    out.lambda = lam;
    return out;
}

} // namespace drsn
