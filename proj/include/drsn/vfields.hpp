#ifndef DRSN_VFIELDS_HPP
#define DRSN_VFIELDS_HPP

#include <array>
#include <optional>
#include <vector>

#include "drsn/series.hpp"

namespace drsn {

// Formal vector field bx d/dx + b1 d/dy1 + b2 d/dy2.
struct VectorField {
    TruncatedSeries bx, b1, b2;

    VectorField() = default;
    explicit VectorField(int order)
        : bx(TruncatedSeries::zero(order)), b1(TruncatedSeries::zero(order)), b2(TruncatedSeries::zero(order)) {}
    VectorField(TruncatedSeries x, TruncatedSeries y1, TruncatedSeries y2)
        : bx(std::move(x)), b1(std::move(y1)), b2(std::move(y2)) {}

    int order() const { return std::min(bx.order(), std::min(b1.order(), b2.order())); }
    const TruncatedSeries& comp(int i) const { return i == 0 ? bx : (i == 1 ? b1 : b2); }
    TruncatedSeries& comp(int i) { return i == 0 ? bx : (i == 1 ? b1 : b2); }

    // vanishes at the origin
    bool is_singular() const;

    // Krull order of the field: min over components; order()+1 if zero.
    int order_of() const;

    double max_abs() const;

    VectorField operator-() const { return {-bx, -b1, -b2}; }
    VectorField& operator+=(const VectorField& rhs);
    VectorField& operator-=(const VectorField& rhs);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(VectorField a, Complex c);

// L_X(f) = bx df/dx + b1 df/dy1 + b2 df/dy2; result order is order-1.
TruncatedSeries lie_derivative(const VectorField& X, const TruncatedSeries& f);

// [X, Y], characterized by L_[X,Y] = L_X L_Y - L_Y L_X.
VectorField bracket(const VectorField& X, const VectorField& Y);

// Monomial vector field x^k S(mu), S(mu) = mu0 x d/dx + mu1 y1 d/dy1 + mu2 y2 d/dy2.
// Exponents may be -1 in at most one slot, with mu supported there only.
struct MonomialTerm {
    Exponent k;
    std::array<Complex, 3> mu;

    int grade() const { return k.total(); } // component degree is grade()+1
};

using MonomialExpansion = std::vector<MonomialTerm>;

// Unique expansion of a singular field as a sum of monomial fields, graded-lex ordered.
MonomialExpansion monomial_expand(const VectorField& X);

VectorField assemble(const MonomialExpansion& terms, int order);
VectorField monomial_field(Exponent k, const std::array<Complex, 3>& mu, int order);

// Formal diffeomorphism fixing the origin, stored through its coordinate
// images (gx, g1, g2); linear part must be invertible.  Fibered means gx = x.
class Diffeo {
public:
    Diffeo() = default;
    Diffeo(TruncatedSeries gx, TruncatedSeries g1, TruncatedSeries g2);

    static Diffeo identity(int order);
    // (x, y) -> (x, m00 y1 + m01 y2, m10 y1 + m11 y2)
    static Diffeo linear_fibered(const std::array<std::array<Complex, 2>, 2>& m, int order);
    static Diffeo diagonal(Complex t1, Complex t2, int order);
    static Diffeo fibered(const TruncatedSeries& phi1, const TruncatedSeries& phi2);

    int order() const { return std::min(gx_.order(), std::min(g1_.order(), g2_.order())); }
    const TruncatedSeries& gx() const { return gx_; }
    const TruncatedSeries& g1() const { return g1_; }
    const TruncatedSeries& g2() const { return g2_; }
    const TruncatedSeries& comp(int i) const { return i == 0 ? gx_ : (i == 1 ? g1_ : g2_); }

    std::array<std::array<Complex, 3>, 3> linear_part() const;
    bool is_fibered() const;
    bool is_tangent_to_identity() const;

    // pull-back of a 0-form: f o Phi
    TruncatedSeries pullback(const TruncatedSeries& f) const;

private:
    TruncatedSeries gx_, g1_, g2_;
};

// (A o B): apply B first.
Diffeo compose(const Diffeo& A, const Diffeo& B);

// Composition Phi_n o ... o Phi_0 of a sequence with increasing tangency
// orders; stabilizes at the common truncation order.
Diffeo compose_diffeos(const std::vector<Diffeo>& seq, int order);

Diffeo invert_diffeo(const Diffeo& phi);

// Time-1 flow of X as a formal diffeomorphism.  Requires ord(X) >= 2, or a
// shear g(x,y_j) d/dy_i (i != j) whose Lie derivative is nilpotent on jets;
// those arise as correctors for translation terms during normalization.
Diffeo exp_field(const VectorField& X);

// Phi_*(Y) = (DPhi . Y) o Phi^{-1}
VectorField push_forward(const Diffeo& phi, const VectorField& Y);

} // namespace drsn

#endif
