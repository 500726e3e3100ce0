#include "drsn/forms.hpp"

#include <algorithm>
#include <cmath>

namespace drsn {

DiffForm::DiffForm(int order)
    : c0(order), c1{TruncatedSeries(order), TruncatedSeries(order), TruncatedSeries(order)},
      c2{TruncatedSeries(order), TruncatedSeries(order), TruncatedSeries(order)}, c3(order) {}

int DiffForm::order() const {
    int n = std::min(c0.order(), c3.order());
    for (int i = 0; i < 3; ++i) n = std::min(n, std::min(c1[i].order(), c2[i].order()));
    return n;
}

bool DiffForm::is_zero() const {
    if (!c0.is_zero() || !c3.is_zero()) return false;
    for (int i = 0; i < 3; ++i)
        if (!c1[i].is_zero() || !c2[i].is_zero()) return false;
    return true;
}

double DiffForm::max_abs() const {
    double m = std::max(c0.max_abs(), c3.max_abs());
    for (int i = 0; i < 3; ++i) m = std::max(m, std::max(c1[i].max_abs(), c2[i].max_abs()));
    return m;
}

int DiffForm::top_degree() const {
    if (!c3.is_zero()) return 3;
    for (int i = 0; i < 3; ++i)
        if (!c2[i].is_zero()) return 2;
    for (int i = 0; i < 3; ++i)
        if (!c1[i].is_zero()) return 1;
    if (!c0.is_zero()) return 0;
    return -1;
}

bool DiffForm::homogeneous(int deg) const {
    int t = top_degree();
    return t == -1 || t == deg;
}

DiffForm DiffForm::from0(TruncatedSeries f) {
    DiffForm a(f.order());
    a.c0 = std::move(f);
    return a;
}

DiffForm DiffForm::from1(TruncatedSeries ax, TruncatedSeries a1, TruncatedSeries a2) {
    DiffForm a(std::min(ax.order(), std::min(a1.order(), a2.order())));
    a.c1 = {std::move(ax), std::move(a1), std::move(a2)};
    return a;
}

DiffForm DiffForm::from2(TruncatedSeries bx1, TruncatedSeries bx2, TruncatedSeries b12) {
    DiffForm a(std::min(bx1.order(), std::min(bx2.order(), b12.order())));
    a.c2 = {std::move(bx1), std::move(bx2), std::move(b12)};
    return a;
}

DiffForm DiffForm::from3(TruncatedSeries c) {
    DiffForm a(c.order());
    a.c3 = std::move(c);
    return a;
}

DiffForm DiffForm::basis_dx(int order) {
    return from1(TruncatedSeries::constant(Complex{1.0, 0.0}, order), TruncatedSeries::zero(order),
                 TruncatedSeries::zero(order));
}
DiffForm DiffForm::basis_dy1(int order) {
    return from1(TruncatedSeries::zero(order), TruncatedSeries::constant(Complex{1.0, 0.0}, order),
                 TruncatedSeries::zero(order));
}
DiffForm DiffForm::basis_dy2(int order) {
    return from1(TruncatedSeries::zero(order), TruncatedSeries::zero(order),
                 TruncatedSeries::constant(Complex{1.0, 0.0}, order));
}

DiffForm DiffForm::operator-() const {
    DiffForm a = *this;
    a.c0 = -a.c0;
    a.c3 = -a.c3;
    for (int i = 0; i < 3; ++i) {
        a.c1[i] = -a.c1[i];
        a.c2[i] = -a.c2[i];
    }
    return a;
}

DiffForm& DiffForm::operator+=(const DiffForm& rhs) {
    c0 += rhs.c0;
    c3 += rhs.c3;
    for (int i = 0; i < 3; ++i) {
        c1[i] += rhs.c1[i];
        c2[i] += rhs.c2[i];
    }
    return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& rhs) { return *this += -rhs; }

DiffForm& DiffForm::operator*=(Complex c) {
    c0 *= c;
    c3 *= c;
    for (int i = 0; i < 3; ++i) {
        c1[i] *= c;
        c2[i] *= c;
    }
    return *this;
}

// wedge of basis 1-forms: e_i ^ e_j -> (sign, 2-form basis index)
// 1-form basis: 0=dx 1=dy1 2=dy2; 2-form basis: 0=dx^dy1 1=dx^dy2 2=dy1^dy2
static bool wedge11(int i, int j, int& idx, double& sign) {
    if (i == j) return false;
    static const int table[3][3] = {{-1, 0, 1}, {0, -1, 2}, {1, 2, -1}};
    idx = table[i][j];
    sign = i < j ? 1.0 : -1.0;
    return true;
}

// e_i ^ (2-form basis j) -> 3-form coefficient sign (0 if degenerate)
static double wedge12(int i, int j) {
    // dx^(dy1^dy2) = +top; dy1^(dx^dy2) = -top; dy2^(dx^dy1) = +top
    if (i == 0 && j == 2) return 1.0;
    if (i == 1 && j == 1) return -1.0;
    if (i == 2 && j == 0) return 1.0;
    return 0.0;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    int n = std::min(a.order(), b.order());
    // degree guard on nonzero graded parts
    auto present = [](const DiffForm& f, int d) {
        switch (d) {
            case 0: return !f.c0.is_zero();
            case 1: return !(f.c1[0].is_zero() && f.c1[1].is_zero() && f.c1[2].is_zero());
            case 2: return !(f.c2[0].is_zero() && f.c2[1].is_zero() && f.c2[2].is_zero());
            default: return !f.c3.is_zero();
        }
    };
    for (int da = 0; da <= 3; ++da)
        for (int db = 0; db <= 3; ++db)
            if (da + db > 3 && present(a, da) && present(b, db)) throw DegreeOverflow();

    DiffForm out(n);
    // 0 x p
    out.c0 += mul(a.c0, b.c0);
    for (int i = 0; i < 3; ++i) {
        out.c1[i] += mul(a.c0, b.c1[i]) + mul(b.c0, a.c1[i]);
        out.c2[i] += mul(a.c0, b.c2[i]) + mul(b.c0, a.c2[i]);
    }
    out.c3 += mul(a.c0, b.c3) + mul(b.c0, a.c3);
    // 1 x 1
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int idx;
            double sign;
            if (!wedge11(i, j, idx, sign)) continue;
            out.c2[idx] += mul(a.c1[i], b.c1[j]) * Complex{sign, 0.0};
        }
    // 1 x 2 and 2 x 1
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = wedge12(i, j);
            if (s == 0.0) continue;
            out.c3 += mul(a.c1[i], b.c2[j]) * Complex{s, 0.0};
            out.c3 += mul(a.c2[j], b.c1[i]) * Complex{s, 0.0}; // 2-form first: same sign (even permutation count)
        }
    return out;
}

DiffForm exterior_d(const DiffForm& a) {
    int n = std::max(0, a.order() - 1);
    DiffForm out(n);
    // d of 0-form
    out.c1[0] += partial_derivative(a.c0, Var::x);
    out.c1[1] += partial_derivative(a.c0, Var::y1);
    out.c1[2] += partial_derivative(a.c0, Var::y2);
    // d of 1-form
    out.c2[0] += partial_derivative(a.c1[1], Var::x) - partial_derivative(a.c1[0], Var::y1);
    out.c2[1] += partial_derivative(a.c1[2], Var::x) - partial_derivative(a.c1[0], Var::y2);
    out.c2[2] += partial_derivative(a.c1[2], Var::y1) - partial_derivative(a.c1[1], Var::y2);
    // d of 2-form
    out.c3 += partial_derivative(a.c2[2], Var::x) - partial_derivative(a.c2[1], Var::y1) +
              partial_derivative(a.c2[0], Var::y2);
    return out;
}

DiffForm interior_product(const VectorField& X, const DiffForm& a) {
    int n = std::min(X.order(), a.order());
    DiffForm out(n);
    // 1-form -> 0-form
    out.c0 += mul(a.c1[0], X.bx) + mul(a.c1[1], X.b1) + mul(a.c1[2], X.b2);
    // 2-form -> 1-form
    // i_X(dx^dy1) = bx dy1 - b1 dx, i_X(dx^dy2) = bx dy2 - b2 dx, i_X(dy1^dy2) = b1 dy2 - b2 dy1
    out.c1[0] += -mul(a.c2[0], X.b1) - mul(a.c2[1], X.b2);
    out.c1[1] += mul(a.c2[0], X.bx) - mul(a.c2[2], X.b2);
    out.c1[2] += mul(a.c2[1], X.bx) + mul(a.c2[2], X.b1);
    // 3-form -> 2-form
    out.c2[0] += mul(a.c3, X.b2);
    out.c2[1] += -mul(a.c3, X.b1);
    out.c2[2] += mul(a.c3, X.bx);
    return out;
}

DiffForm lie_derivative_form(const VectorField& X, const DiffForm& a) {
    return exterior_d(interior_product(X, a)) + interior_product(X, exterior_d(a));
}

DiffForm pullback_form(const Diffeo& phi, const DiffForm& a) {
    int n = std::min(phi.order(), a.order());
    // pulled-back coordinate differentials (order n-1, as dictated by d)
    DiffForm dphi[3];
    for (int i = 0; i < 3; ++i) {
        dphi[i] = DiffForm::from1(partial_derivative(phi.comp(i), Var::x),
                                  partial_derivative(phi.comp(i), Var::y1),
                                  partial_derivative(phi.comp(i), Var::y2));
    }
    DiffForm out(n);
    out.c0 += phi.pullback(a.c0);
    for (int i = 0; i < 3; ++i)
        if (!a.c1[i].is_zero()) out += wedge(DiffForm::from0(phi.pullback(a.c1[i])), dphi[i]);
    static const int pair2[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int i = 0; i < 3; ++i) {
        if (a.c2[i].is_zero()) continue;
        DiffForm w = wedge(dphi[pair2[i][0]], dphi[pair2[i][1]]);
        out += wedge(DiffForm::from0(phi.pullback(a.c2[i])), w);
    }
    if (!a.c3.is_zero()) {
        DiffForm w = wedge(wedge(dphi[0], dphi[1]), dphi[2]);
        out += wedge(DiffForm::from0(phi.pullback(a.c3)), w);
    }
    return out;
}

bool in_ideal_dx(const DiffForm& a, double tol) {
    double thr = tol > 0.0 ? tol : ZETA_TOL * std::max(1.0, a.max_abs());
    // dx-free components: c0, dy1, dy2, dy1^dy2
    if (a.c0.max_abs() > thr) return false;
    if (a.c1[1].max_abs() > thr || a.c1[2].max_abs() > thr) return false;
    if (a.c2[2].max_abs() > thr) return false;
    return true;
}

bool x_divisible(const TruncatedSeries& f) {
    double thr = ZETA_TOL * std::max(1.0, f.max_abs());
    for (const auto& [k, c] : f.terms())
        if (k.k0 == 0 && std::abs(c) > thr) return false;
    return true;
}

TruncatedSeries divide_by_x(const TruncatedSeries& f) {
    if (!x_divisible(f)) throw NotXDivisible();
    TruncatedSeries out(f.order()); // dividing cannot raise the degree
    for (const auto& [k, c] : f.terms()) {
        if (k.k0 == 0) continue; // below tolerance
        out.add_term({k.k0 - 1, k.k1, k.k2}, c);
    }
    return out;
}

bool is_transversally_hamiltonian(const VectorField& Y, double tol) {
    if (!x_divisible(Y.bx)) throw NotXDivisible("L_Y(x) is not divisible by x");
    int n = Y.order();
    double scale = std::max(1.0, Y.max_abs());
    // L_Y(dx) = d(L_Y x) = d(bx)
    DiffForm ldx = exterior_d(DiffForm::from0(Y.bx));
    if (!in_ideal_dx(ldx, tol * scale)) return false;
    // x L_Y(omega) = -(bx/x) dy1^dy2 + L_Y(dy1^dy2)
    DiffForm om = DiffForm::from2(TruncatedSeries::zero(n), TruncatedSeries::zero(n),
                                  TruncatedSeries::constant(Complex{1.0, 0.0}, n));
    DiffForm lom = lie_derivative_form(Y, om);
    lom += DiffForm::from2(TruncatedSeries::zero(n), TruncatedSeries::zero(n), -divide_by_x(Y.bx));
    return in_ideal_dx(lom, tol * scale);
}

bool is_transversally_hamiltonian_monomialwise(const VectorField& Y, double tol) {
    double scale = std::max(1.0, Y.max_abs());
    for (const auto& t : monomial_expand(Y)) {
        Complex cond1 = t.mu[1] * double(t.k.k1 + 1) + t.mu[2] * double(t.k.k2 + 1) - t.mu[0];
        if (std::abs(cond1) > tol * scale) return false;
        bool mu0_zero = std::abs(t.mu[0]) <= tol * scale;
        if (!mu0_zero && !(t.k.k1 == 0 && t.k.k2 == 0)) return false;
    }
    return true;
}

bool is_transversally_symplectic(const Diffeo& phi, double tol) {
    if (!phi.is_fibered()) return false;
    int n = phi.order();
    DiffForm om = DiffForm::from2(TruncatedSeries::zero(n), TruncatedSeries::zero(n),
                                  TruncatedSeries::constant(Complex{1.0, 0.0}, n));
    DiffForm diff = pullback_form(phi, om) - om;
    double scale = std::max(1.0, phi.g1().max_abs() * phi.g2().max_abs());
    return in_ideal_dx(diff, tol * scale);
}

} // namespace drsn
