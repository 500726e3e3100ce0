#ifndef DRSN_FORMS_HPP
#define DRSN_FORMS_HPP

#include <array>

#include "drsn/series.hpp"
#include "drsn/vfields.hpp"

namespace drsn {

// Element of the exterior algebra in (x, y1, y2) with series coefficients,
// all graded parts stored together.  Basis order: (dx, dy1, dy2) for 1-forms
// and (dx^dy1, dx^dy2, dy1^dy2) for 2-forms.
struct DiffForm {
    TruncatedSeries c0;
    std::array<TruncatedSeries, 3> c1;
    std::array<TruncatedSeries, 3> c2;
    TruncatedSeries c3;

    DiffForm() = default;
    explicit DiffForm(int order);

    int order() const;
    bool is_zero() const;
    double max_abs() const;

    // -1 for the zero form, else the highest grade with a nonzero part.
    int top_degree() const;
    bool homogeneous(int deg) const;

    static DiffForm from0(TruncatedSeries f);
    static DiffForm from1(TruncatedSeries ax, TruncatedSeries a1, TruncatedSeries a2);
    static DiffForm from2(TruncatedSeries bx1, TruncatedSeries bx2, TruncatedSeries b12);
    static DiffForm from3(TruncatedSeries c);
    static DiffForm basis_dx(int order);
    static DiffForm basis_dy1(int order);
    static DiffForm basis_dy2(int order);

    DiffForm operator-() const;
    DiffForm& operator+=(const DiffForm& rhs);
    DiffForm& operator-=(const DiffForm& rhs);
    DiffForm& operator*=(Complex c);
    friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
    friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
    friend DiffForm operator*(DiffForm a, Complex c) { return a *= c; }
    friend DiffForm operator*(Complex c, DiffForm a) { return a *= c; }
};

// Graded anticommutative product; throws DegreeOverflow when nonzero parts
// would multiply past degree 3.
DiffForm wedge(const DiffForm& a, const DiffForm& b);

DiffForm exterior_d(const DiffForm& a);

// Interior product (contraction in the first slot).
DiffForm interior_product(const VectorField& X, const DiffForm& a);

// Cartan: L_X = d o i_X + i_X o d.
DiffForm lie_derivative_form(const VectorField& X, const DiffForm& a);

DiffForm pullback_form(const Diffeo& phi, const DiffForm& a);

// Membership in the ideal <dx>: every basis component without dx vanishes.
bool in_ideal_dx(const DiffForm& a, double tol = 0.0);

// Every term of f has a positive power of x.
bool x_divisible(const TruncatedSeries& f);
TruncatedSeries divide_by_x(const TruncatedSeries& f);

// L_Y(dx) in <dx>  and  x L_Y(dy1^dy2 / x) in <dx>, computed pole-free as
// -(L_Y(x)/x) dy1^dy2 + L_Y(dy1^dy2).  Requires L_Y(x) divisible by x.
bool is_transversally_hamiltonian(const VectorField& Y, double tol = 1e-9);

// Same predicate through the per-monomial conditions
//   mu1 (k1+1) + mu2 (k2+1) = mu0   and   (mu0 = 0 or k1 = k2 = 0).
bool is_transversally_hamiltonian_monomialwise(const VectorField& Y, double tol = 1e-9);

// Fibered and pullback(dy1^dy2) in dy1^dy2 + <dx>.
bool is_transversally_symplectic(const Diffeo& phi, double tol = 1e-9);

} // namespace drsn

#endif
