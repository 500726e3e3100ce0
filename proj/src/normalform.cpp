#include "drsn/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace drsn {

SaddleNodeInput SaddleNodeInput::validate(const VectorField& field, double tol) {
    double scale = std::max(1.0, field.max_abs());
    const TruncatedSeries& bx = field.bx;
    const TruncatedSeries& b1 = field.b1;
    const TruncatedSeries& b2 = field.b2;

    if (std::abs(bx.coeff({2, 0, 0}) - Complex{1.0, 0.0}) > tol * scale)
        throw MalformedInput("x-component must start with x^2");
    for (const auto& [k, c] : bx.terms()) {
        if (k == Exponent{2, 0, 0}) continue;
        if (k.total() < 2 && std::abs(c) > tol * scale)
            throw MalformedInput("x-component has forbidden low-order terms");
        if (!(k.k1 == 0 && k.k2 == 0 && k.k0 >= 2) && std::abs(c) > tol * scale)
            throw MalformedInput("x-component must be x^2 plus higher powers of x");
    }

    Complex lam = b2.coeff({0, 0, 1});
    if (std::abs(lam) <= tol * scale) throw MalformedInput("lambda is numerically zero");
    if (std::abs(b1.coeff({0, 1, 0}) + lam) > tol * scale)
        throw NonDiagonalLinearPart("y-linear part is not diag(-lambda, lambda)");
    if (std::abs(b1.coeff({0, 0, 1})) > tol * scale || std::abs(b2.coeff({0, 1, 0})) > tol * scale)
        throw NonDiagonalLinearPart("y-linear part has off-diagonal terms");
    if (std::abs(b1.constant_term()) > tol * scale || std::abs(b2.constant_term()) > tol * scale ||
        std::abs(bx.constant_term()) > tol * scale)
        throw MalformedInput("field must vanish at the origin");
    if (std::abs(b1.coeff({1, 0, 0})) > tol * scale || std::abs(b2.coeff({1, 0, 0})) > tol * scale)
        throw MalformedInput("translation terms must have order >= 2 in x");
    return SaddleNodeInput{field, lam};
}

Complex residue(const SaddleNodeInput& Y) {
    return Y.field.b1.coeff({1, 1, 0}) + Y.field.b2.coeff({1, 0, 1});
}

VectorField normal_form_field(const NormalFormParams& p, int order) {
    VectorField Z(order);
    Z.bx.add_term({2, 0, 0}, Complex{1.0, 0.0});
    Z.b1.add_term({0, 1, 0}, -p.lambda);
    Z.b1.add_term({1, 1, 0}, p.a1);
    Z.b2.add_term({0, 0, 1}, p.lambda);
    Z.b2.add_term({1, 0, 1}, p.a2);
    for (int k = 1; k <= p.c1_jet.order(); ++k) {
        if (p.c1_jet[k] != Complex{}) Z.b1.add_term({0, k + 1, k}, p.c1_jet[k]);
        if (p.c2_jet[k] != Complex{}) Z.b2.add_term({0, k, k + 1}, p.c2_jet[k]);
    }
    return Z;
}

namespace {

// One elimination move: conjugate by exp(G) and keep the bookkeeping.
void apply_corrector(const VectorField& G, VectorField& field, Diffeo& conj) {
    Diffeo phi = exp_field(G);
    field = push_forward(phi, field);
    conj = compose(phi, conj);
}

} // namespace

NormalizationResult normalize(const SaddleNodeInput& Y, int order) {
    const int n = order;
    const Complex lam = Y.lambda;
    const double scale = std::max(1.0, Y.field.max_abs());

    VectorField field(n);
    field.bx = Y.field.bx.with_order(n);
    field.b1 = Y.field.b1.with_order(n);
    field.b2 = Y.field.b2.with_order(n);
    Diffeo conj = Diffeo::identity(n);

    // Step 1: kill the non-resonant terms grade by grade.  Grade 0 holds the
    // x-translation terms x^{k0} d/dy_i, whose correctors are shears; the
    // frame lambda S(0,-1,1) contributes the divisor lambda (k1 - k2).
    // Conjugation by exp(G) changes the target coefficient by
    // -lambda (k1 - k2) eta, so eta = mu / (lambda (k1 - k2)); everything
    // else it touches sits at strictly higher grade once grade 0 is clean.
    for (int d = 0; d <= n - 1; ++d) {
        for (int sweep = 0;; ++sweep) {
            if (sweep > n + 2) throw Degenerate("step-1 elimination failed to converge at grade " + std::to_string(d));
            MonomialExpansion terms = monomial_expand(field);
            bool removed = false;
            for (const auto& t : terms) {
                if (t.grade() != d || t.k.k1 == t.k.k2) continue;
                if (std::max(std::abs(t.mu[1]), std::abs(t.mu[2])) <= ZETA_TOL * scale) continue;
                if (std::abs(t.mu[0]) > 1e-9 * scale)
                    throw MalformedInput("unexpected d/dx term in the monomial expansion");
                Complex div = lam * double(t.k.k1 - t.k.k2);
                std::array<Complex, 3> eta = {Complex{}, t.mu[1] / div, t.mu[2] / div};
                apply_corrector(monomial_field(t.k, eta, n), field, conj);
                removed = true;
            }
            if (!removed) break;
        }
    }

    const Complex a1 = field.b1.coeff({1, 1, 0});
    const Complex a2 = field.b2.coeff({1, 0, 1});
    const Complex a = a1 + a2;

    // Step 2: kill x^{k0} (y1 y2)^k S(0, mu) for k0 >= 1, (k0,k) != (1,0),
    // by grade J = k0 + k with k0 decreasing inside a grade (junk produced by
    // a removal lands at smaller k0 in the same grade, or higher grades).
    // The divisor comes from the bracket with x S(1,a1,a2); conjugation
    // changes the target coefficient by +((k0-1) + k a) eta.
    for (int J = 2; J <= n - 1; ++J) {
        for (int k0 = J; k0 >= 1; --k0) {
            int k = J - k0;
            if (k0 == 1 && k == 0) continue;
            if (k0 + 2 * k > n - 1) continue;
            MonomialExpansion terms = monomial_expand(field);
            auto it = std::find_if(terms.begin(), terms.end(),
                                   [&](const MonomialTerm& t) { return t.k == Exponent{k0, k, k}; });
            if (it == terms.end()) continue;
            if (std::max(std::abs(it->mu[1]), std::abs(it->mu[2])) <= ZETA_TOL * scale) continue;
            Complex div = Complex{double(k0 - 1), 0.0} + double(k) * a;
            if (std::abs(div) < 1e-9 * (1.0 + std::abs(a))) {
                std::ostringstream os;
                os << "degenerate resonance: divisor (k0-1) + k(a1+a2) vanishes at (k0,k) = (" << k0 << "," << k
                   << "), a1+a2 = " << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
                throw Degenerate(os.str());
            }
            std::array<Complex, 3> eta = {Complex{}, -it->mu[1] / div, -it->mu[2] / div};
            apply_corrector(monomial_field({k0 - 1, k, k}, eta, n), field, conj);
        }
    }

    NormalizationResult res;
    res.residual = field;
    res.conjugacy = conj;
    res.guaranteed_v_order = std::max(0, (n - 2) / 2);
    const int M = res.guaranteed_v_order;
    NormalFormParams p;
    p.lambda = field.b2.coeff({0, 0, 1});
    p.a1 = a1;
    p.a2 = a2;
    p.c1_jet = UnivariateSeries(M);
    p.c2_jet = UnivariateSeries(M);
    for (int k = 1; k <= M; ++k) {
        p.c1_jet.set(k, field.b1.coeff({0, k + 1, k}));
        p.c2_jet.set(k, field.b2.coeff({0, k, k + 1}));
    }
    p.c1_jet.trim();
    p.c2_jet.trim();
    res.params = p;
    return res;
}

std::optional<OrbitWitness> params_equivalent(const NormalFormParams& p, const NormalFormParams& q, double tol) {
    if (p.v_order() != q.v_order()) throw JetOrderMismatch();
    const int M = p.v_order();

    auto close = [&](Complex u, Complex v) { return std::abs(u - v) <= tol * (1.0 + std::max(std::abs(u), std::abs(v))); };

    for (int eps = 0; eps <= 1; ++eps) {
        NormalFormParams s = p;
        if (eps == 1) {
            s.lambda = -p.lambda;
            s.a1 = p.a2;
            s.a2 = p.a1;
            s.c1_jet = p.c2_jet;
            s.c2_jet = p.c1_jet;
        }
        if (!close(s.lambda, q.lambda) || !close(s.a1, q.a1) || !close(s.a2, q.a2)) continue;

        // q.c_i(v) must equal s.c_i(theta v): q_k = s_k theta^k
        double cscale = std::max({1.0, s.c1_jet.max_abs(), s.c2_jet.max_abs(), q.c1_jet.max_abs(),
                                  q.c2_jet.max_abs()});
        int k0 = 0;
        for (int k = 1; k <= M && k0 == 0; ++k)
            if (std::abs(s.c1_jet[k]) > tol * cscale || std::abs(s.c2_jet[k]) > tol * cscale) k0 = k;
        if (k0 == 0) {
            // both source jets vanish; equivalent iff target jets vanish too
            bool qzero = true;
            for (int k = 1; k <= M; ++k)
                if (std::abs(q.c1_jet[k]) > tol * cscale || std::abs(q.c2_jet[k]) > tol * cscale) qzero = false;
            if (qzero) return OrbitWitness{Complex{1.0, 0.0}, eps};
            continue;
        }
        const UnivariateSeries& anchor_s = std::abs(s.c1_jet[k0]) >= std::abs(s.c2_jet[k0]) ? s.c1_jet : s.c2_jet;
        const UnivariateSeries& anchor_q = std::abs(s.c1_jet[k0]) >= std::abs(s.c2_jet[k0]) ? q.c1_jet : q.c2_jet;
        if (std::abs(anchor_q[k0]) <= tol * cscale) continue;
        Complex ratio = anchor_q[k0] / anchor_s[k0];
        double r = std::pow(std::abs(ratio), 1.0 / k0);
        double arg0 = std::arg(ratio) / k0;
        for (int j = 0; j < k0; ++j) {
            Complex theta = std::polar(r, arg0 + 2.0 * M_PI * double(j) / double(k0));
            bool ok = true;
            Complex tk = Complex{1.0, 0.0};
            for (int k = 1; k <= M && ok; ++k) {
                tk *= theta;
                if (std::abs(s.c1_jet[k] * tk - q.c1_jet[k]) > tol * cscale * std::pow(std::max(1.0, std::abs(theta)), k))
                    ok = false;
                if (std::abs(s.c2_jet[k] * tk - q.c2_jet[k]) > tol * cscale * std::pow(std::max(1.0, std::abs(theta)), k))
                    ok = false;
            }
            if (ok) return OrbitWitness{theta, eps};
        }
    }
    return std::nullopt;
}

IsotropyDescription isotropy_group(const NormalFormParams& p) {
    double cscale = std::max({1.0, p.c1_jet.max_abs(), p.c2_jet.max_abs()});
    int g = 0;
    for (int k = 1; k <= p.v_order(); ++k) {
        if (std::abs(p.c1_jet[k]) > ZETA_TOL * cscale || std::abs(p.c2_jet[k]) > ZETA_TOL * cscale)
            g = g == 0 ? k : std::gcd(g, k);
    }
    return IsotropyDescription{g};
}

bool symplectic_isotropy_check(const NormalFormParams& p, Complex alpha, double tol) {
    if (std::abs(alpha) == 0.0) throw MalformedInput("alpha must be nonzero");
    double cscale = std::max({1.0, p.c1_jet.max_abs(), p.c2_jet.max_abs()});
    if (std::abs(p.a1 + p.a2 - Complex{1.0, 0.0}) > 1e-8 * (1.0 + std::abs(p.a1) + std::abs(p.a2)))
        throw NotHamiltonianForm("a1 + a2 != 1");
    for (int k = 1; k <= p.v_order(); ++k)
        if (std::abs(p.c1_jet[k] + p.c2_jet[k]) > 1e-8 * cscale)
            throw NotHamiltonianForm("c1 != -c2");
    int n = 2 * p.v_order() + 2;
    VectorField Z = normal_form_field(p, n);
    VectorField moved = push_forward(Diffeo::diagonal(alpha, Complex{1.0, 0.0} / alpha, n), Z);
    VectorField diff = moved - Z;
    return diff.max_abs() <= tol * std::max(1.0, Z.max_abs());
}

} // namespace drsn
