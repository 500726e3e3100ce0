#include "drsn/vfields.hpp"

#include <algorithm>
#include <cmath>

namespace drsn {

bool VectorField::is_singular() const {
    double thr0 = ZETA_TOL * std::max(1.0, bx.max_abs());
    double thr1 = ZETA_TOL * std::max(1.0, b1.max_abs());
    double thr2 = ZETA_TOL * std::max(1.0, b2.max_abs());
    return std::abs(bx.constant_term()) <= thr0 && std::abs(b1.constant_term()) <= thr1 &&
           std::abs(b2.constant_term()) <= thr2;
}

int VectorField::order_of() const {
    int o = order() + 1;
    for (int i = 0; i < 3; ++i)
        if (!comp(i).is_zero()) o = std::min(o, comp(i).order_of());
    return o;
}

double VectorField::max_abs() const { return std::max(bx.max_abs(), std::max(b1.max_abs(), b2.max_abs())); }

VectorField& VectorField::operator+=(const VectorField& rhs) {
    bx += rhs.bx;
    b1 += rhs.b1;
    b2 += rhs.b2;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& rhs) {
    bx -= rhs.bx;
    b1 -= rhs.b1;
    b2 -= rhs.b2;
    return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(VectorField a, Complex c) {
    a.bx *= c;
    a.b1 *= c;
    a.b2 *= c;
    return a;
}

TruncatedSeries lie_derivative(const VectorField& X, const TruncatedSeries& f) {
    TruncatedSeries out = mul(X.bx, partial_derivative(f, Var::x));
    out += mul(X.b1, partial_derivative(f, Var::y1));
    out += mul(X.b2, partial_derivative(f, Var::y2));
    return out;
}

VectorField bracket(const VectorField& X, const VectorField& Y) {
    VectorField out;
    out.bx = lie_derivative(X, Y.bx) - lie_derivative(Y, X.bx);
    out.b1 = lie_derivative(X, Y.b1) - lie_derivative(Y, X.b1);
    out.b2 = lie_derivative(X, Y.b2) - lie_derivative(Y, X.b2);
    return out;
}

MonomialExpansion monomial_expand(const VectorField& X) {
    if (!X.is_singular()) throw NotSingular();
    std::map<Exponent, std::array<Complex, 3>, GradedLexLess> acc;
    for (int i = 0; i < 3; ++i) {
        for (const auto& [t, c] : X.comp(i).terms()) {
            Exponent k = t;
            k[i] -= 1;
            acc[k][i] += c;
        }
    }
    MonomialExpansion out;
    out.reserve(acc.size());
    for (auto& [k, mu] : acc) out.push_back({k, mu});
    return out;
}

VectorField monomial_field(Exponent k, const std::array<Complex, 3>& mu, int order) {
    VectorField out(order);
    for (int i = 0; i < 3; ++i) {
        if (mu[i] == Complex{}) continue;
        Exponent t = k;
        t[i] += 1;
        if (t.k0 < 0 || t.k1 < 0 || t.k2 < 0)
            throw MalformedInput("monomial term has a negative exponent outside the allowed slot");
        out.comp(i).add_term(t, mu[i]);
    }
    return out;
}

VectorField assemble(const MonomialExpansion& terms, int order) {
    VectorField out(order);
    for (const auto& t : terms) out += monomial_field(t.k, t.mu, order);
    return out;
}

// ---------------------------------------------------------------------------

Diffeo::Diffeo(TruncatedSeries gx, TruncatedSeries g1, TruncatedSeries g2)
    : gx_(std::move(gx)), g1_(std::move(g1)), g2_(std::move(g2)) {
    double thr = ZETA_TOL * std::max(1.0, std::max(gx_.max_abs(), std::max(g1_.max_abs(), g2_.max_abs())));
    if (std::abs(gx_.constant_term()) > thr || std::abs(g1_.constant_term()) > thr ||
        std::abs(g2_.constant_term()) > thr)
        throw MalformedInput("diffeomorphism must fix the origin");
    auto L = linear_part();
    Complex det = L[0][0] * (L[1][1] * L[2][2] - L[1][2] * L[2][1]) -
                  L[0][1] * (L[1][0] * L[2][2] - L[1][2] * L[2][0]) +
                  L[0][2] * (L[1][0] * L[2][1] - L[1][1] * L[2][0]);
    double scale = 0.0;
    for (const auto& row : L)
        for (Complex v : row) scale = std::max(scale, std::abs(v));
    if (std::abs(det) <= ZETA_TOL * std::max(1.0, scale * scale * scale)) throw NotInvertible("linear part is singular");
}

Diffeo Diffeo::identity(int order) {
    return Diffeo(TruncatedSeries::variable(Var::x, order), TruncatedSeries::variable(Var::y1, order),
                  TruncatedSeries::variable(Var::y2, order));
}

Diffeo Diffeo::linear_fibered(const std::array<std::array<Complex, 2>, 2>& m, int order) {
    TruncatedSeries p1(order), p2(order);
    p1.add_term({0, 1, 0}, m[0][0]);
    p1.add_term({0, 0, 1}, m[0][1]);
    p2.add_term({0, 1, 0}, m[1][0]);
    p2.add_term({0, 0, 1}, m[1][1]);
    return Diffeo(TruncatedSeries::variable(Var::x, order), p1, p2);
}

Diffeo Diffeo::diagonal(Complex t1, Complex t2, int order) {
    return linear_fibered({{{t1, Complex{}}, {Complex{}, t2}}}, order);
}

Diffeo Diffeo::fibered(const TruncatedSeries& phi1, const TruncatedSeries& phi2) {
    int order = std::min(phi1.order(), phi2.order());
    return Diffeo(TruncatedSeries::variable(Var::x, order), phi1.with_order(order), phi2.with_order(order));
}

std::array<std::array<Complex, 3>, 3> Diffeo::linear_part() const {
    std::array<std::array<Complex, 3>, 3> L{};
    const Exponent basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) L[i][j] = comp(i).coeff(basis[j]);
    return L;
}

bool Diffeo::is_fibered() const {
    TruncatedSeries d = gx_ - TruncatedSeries::variable(Var::x, gx_.order());
    return d.is_zero();
}

bool Diffeo::is_tangent_to_identity() const {
    auto L = linear_part();
    double thr = 1e-9;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex want = i == j ? Complex{1.0, 0.0} : Complex{};
            if (std::abs(L[i][j] - want) > thr) return false;
        }
    return true;
}

TruncatedSeries Diffeo::pullback(const TruncatedSeries& f) const { return substitute(f, gx_, g1_, g2_); }

Diffeo compose(const Diffeo& A, const Diffeo& B) {
    return Diffeo(substitute(A.gx(), B.gx(), B.g1(), B.g2()), substitute(A.g1(), B.gx(), B.g1(), B.g2()),
                  substitute(A.g2(), B.gx(), B.g1(), B.g2()));
}

Diffeo compose_diffeos(const std::vector<Diffeo>& seq, int order) {
    Diffeo out = Diffeo::identity(order);
    for (const auto& phi : seq) out = compose(phi, out);
    return out;
}

static std::array<std::array<Complex, 3>, 3> invert3(const std::array<std::array<Complex, 3>, 3>& m) {
    std::array<std::array<Complex, 3>, 3> a = m;
    std::array<std::array<Complex, 3>, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[i][i] = Complex{1.0, 0.0};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) throw NotInvertible("linear part is singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Complex d = a[col][col];
        for (int j = 0; j < 3; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            Complex f = a[r][col];
            if (f == Complex{}) continue;
            for (int j = 0; j < 3; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

Diffeo invert_diffeo(const Diffeo& phi) {
    const int n = phi.order();
    auto L = phi.linear_part();
    auto Linv = invert3(L);

    // nonlinear remainder of phi
    std::array<TruncatedSeries, 3> hi;
    const Exponent basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i) {
        hi[i] = phi.comp(i);
        for (int j = 0; j < 3; ++j) hi[i].add_term(basis[j], -L[i][j]);
    }

    auto linear_apply = [&](const std::array<TruncatedSeries, 3>& v) {
        std::array<TruncatedSeries, 3> out{TruncatedSeries::zero(n), TruncatedSeries::zero(n),
                                           TruncatedSeries::zero(n)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (Linv[i][j] != Complex{}) out[i] += v[j] * Linv[i][j];
        return out;
    };

    // psi = Linv (id - hi(psi)); the degree-d part of hi(psi) only involves
    // psi below degree d, so n iterations fix all degrees up to n.
    std::array<TruncatedSeries, 3> id = {TruncatedSeries::variable(Var::x, n), TruncatedSeries::variable(Var::y1, n),
                                         TruncatedSeries::variable(Var::y2, n)};
    std::array<TruncatedSeries, 3> psi = linear_apply(id);
    for (int it = 0; it < n; ++it) {
        std::array<TruncatedSeries, 3> rhs;
        for (int i = 0; i < 3; ++i) rhs[i] = id[i] - substitute(hi[i], psi[0], psi[1], psi[2]);
        psi = linear_apply(rhs);
    }
    return Diffeo(psi[0], psi[1], psi[2]);
}

// Shear fields g(x, y_j) d/dy_i have nilpotent Lie derivative on truncated
// series even at order 1; the exp series still terminates.
static bool is_shear(const VectorField& X) {
    int nonzero = -1;
    for (int i = 0; i < 3; ++i) {
        if (X.comp(i).is_zero()) continue;
        if (nonzero >= 0) return false;
        nonzero = i;
    }
    if (nonzero < 0) return true; // zero field
    return partial_derivative(X.comp(nonzero), static_cast<Var>(nonzero)).is_zero();
}

// Lie derivative that keeps the full truncation order n.  Valid whenever the
// multiplier components vanish at the origin: the degree-n part of b * df
// never needs the dropped degree-n coefficient of df.
static TruncatedSeries lie_derivative_full(const VectorField& X, const TruncatedSeries& f, int n) {
    TruncatedSeries out(n);
    for (int j = 0; j < 3; ++j) {
        if (X.comp(j).is_zero()) continue;
        TruncatedSeries d = partial_derivative(f, static_cast<Var>(j)).with_order(n);
        out += mul(X.comp(j).with_order(n), d);
    }
    return out;
}

Diffeo exp_field(const VectorField& X) {
    const int n = X.order();
    if (!X.is_singular()) throw NotSingular("exp is only defined for singular fields");
    if (X.order_of() < 2 && !is_shear(X))
        throw OrderTooLow("exp requires order >= 2 (or a shear field)");
    // Each Lie application either raises the total order (ord >= 2) or
    // strictly decreases the degree in the sheared variable, so the series
    // terminates within the truncation window.
    std::array<TruncatedSeries, 3> img = {TruncatedSeries::variable(Var::x, n),
                                          TruncatedSeries::variable(Var::y1, n),
                                          TruncatedSeries::variable(Var::y2, n)};
    for (int i = 0; i < 3; ++i) {
        TruncatedSeries term = img[i];
        for (int k = 1; !term.is_zero(); ++k) {
            if (k > 3 * n + 8) throw OrderTooLow("exp series does not terminate at this truncation order");
            term = lie_derivative_full(X, term, n) * (1.0 / double(k));
            img[i] += term;
        }
    }
    return Diffeo(img[0], img[1], img[2]);
}

VectorField push_forward(const Diffeo& phi, const VectorField& Y) {
    int n = std::min(phi.order(), Y.order());
    // The top-degree coefficients survive only for singular fields (the
    // truncated derivative of phi meets a vanishing cofactor there).
    if (!Y.is_singular()) n -= 1;
    Diffeo psi = invert_diffeo(phi);
    VectorField out(n);
    for (int i = 0; i < 3; ++i) {
        TruncatedSeries w(n);
        for (int j = 0; j < 3; ++j) {
            TruncatedSeries d = partial_derivative(phi.comp(i), static_cast<Var>(j)).with_order(n);
            w += mul(d, Y.comp(j).with_order(n));
        }
        out.comp(i) = substitute(w.with_order(n), psi.gx().with_order(n), psi.g1().with_order(n),
                                 psi.g2().with_order(n));
    }
    return out;
}

} // namespace drsn
