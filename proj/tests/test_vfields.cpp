#include <doctest.h>

#include "drsn/vfields.hpp"
#include "testutil.hpp"

using namespace drsn;
using namespace drsn::test;

namespace {

// closed-form bracket of monomial fields: [x^l S(lam), x^m S(mu)]
//   = x^{l+m} ( <lam,m> S(mu) - <mu,l> S(lam) )
VectorField monomial_bracket_closed_form(Exponent l, const std::array<Complex, 3>& lam, Exponent m,
                                         const std::array<Complex, 3>& mu, int order) {
    auto dot = [](const std::array<Complex, 3>& v, Exponent k) {
        return v[0] * double(k.k0) + v[1] * double(k.k1) + v[2] * double(k.k2);
    };
    Complex a = dot(lam, m), b = dot(mu, l);
    std::array<Complex, 3> combined = {a * mu[0] - b * lam[0], a * mu[1] - b * lam[1], a * mu[2] - b * lam[2]};
    return monomial_field(l + m, combined, order);
}

// exp(-ad_X)(Y): transport of Y by the time-1 flow of X
VectorField adjoint_series(const VectorField& X, const VectorField& Y, int order) {
    VectorField acc = Y, term = Y;
    double fact = 1.0;
    for (int k = 1; k <= 3 * order + 6; ++k) {
        term = bracket(X, term);
        fact *= double(k);
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        VectorField contrib = term * Complex{sign / fact, 0.0};
        if (contrib.max_abs() < 1e-16 * std::max(1.0, Y.max_abs())) break;
        acc += contrib;
    }
    return acc;
}

VectorField with_order(const VectorField& X, int n) {
    return VectorField(X.bx.with_order(n), X.b1.with_order(n), X.b2.with_order(n));
}

} // namespace

TEST_CASE("lie_derivative basics") {
    const int N = 6;
    VectorField X(N);
    X.bx.add_term({2, 0, 0}, Complex{1, 0}); // x^2 d/dx
    TruncatedSeries fx = TruncatedSeries::variable(Var::x, N);
    CHECK(rel_diff(lie_derivative(X, fx), TruncatedSeries::monomial({2, 0, 0}, Complex{1, 0}, N - 1)) < 1e-15);
    CHECK(lie_derivative(X, TruncatedSeries::constant(5.0, N)).is_zero());

    // P1 field applied to y1 y2 against direct expansion
    VectorField Y(N);
    Complex z = Complex{0, 1} / std::sqrt(6.0);
    Y.bx.add_term({2, 0, 0}, Complex{1, 0});
    Y.b1.add_term({0, 0, 1}, Complex{-0.8, 0});
    Y.b1.add_term({1, 1, 0}, Complex{0.4, 0});
    Y.b1.add_term({1, 0, 0}, 0.4 * z);
    Y.b2.add_term({0, 2, 0}, Complex{-4.8, 0});
    Y.b2.add_term({0, 1, 0}, -9.6 * z);
    Y.b2.add_term({1, 0, 1}, Complex{0.6, 0});
    TruncatedSeries v12 = TruncatedSeries::variable(Var::y1, N) * TruncatedSeries::variable(Var::y2, N);
    TruncatedSeries got = lie_derivative(Y, v12);
    TruncatedSeries want = Y.b1 * TruncatedSeries::variable(Var::y2, N) + Y.b2 * TruncatedSeries::variable(Var::y1, N);
    CHECK(rel_diff(got, want.with_order(got.order())) < 1e-14);
}

TEST_CASE("bracket: antisymmetry and monomial closed form") {
    const int N = 6;
    VectorField X = random_singular_field(N, 3);
    CHECK(bracket(X, X).max_abs() < 1e-12 * std::max(1.0, X.max_abs()));

    // [lambda S(0,-1,1), x y1^2 S(0,e1,e2)] = -2 lambda x y1^2 S(0,e1,e2)
    Complex lam = crand() + Complex{1.5, 0};
    Complex e1 = crand(), e2 = crand();
    VectorField S = monomial_field({0, 0, 0}, {Complex{}, -lam, lam}, N);
    VectorField T = monomial_field({1, 2, 0}, {Complex{}, e1, e2}, N);
    VectorField got = bracket(S, T);
    VectorField want = T * (-2.0 * lam);
    CHECK(rel_diff(got, with_order(want, got.order())) < 1e-12);

    // random integer-exponent pairs against the closed form
    for (int t = 0; t < 20; ++t) {
        Exponent l{irand(0, 2), irand(0, 2), irand(0, 2)};
        Exponent m{irand(0, 2), irand(0, 2), irand(0, 2)};
        std::array<Complex, 3> la{crand(), crand(), crand()};
        std::array<Complex, 3> mu{crand(), crand(), crand()};
        // allow a -1 slot on each side
        if (irand(0, 3) == 0) {
            int j = irand(0, 2);
            l[j] = -1;
            la = {Complex{}, Complex{}, Complex{}};
            la[j] = crand();
        }
        if (irand(0, 3) == 0) {
            int j = irand(0, 2);
            m[j] = -1;
            mu = {Complex{}, Complex{}, Complex{}};
            mu[j] = crand();
        }
        VectorField A = monomial_field(l, la, N), B = monomial_field(m, mu, N);
        VectorField lhs = bracket(A, B);
        VectorField rhs = monomial_bracket_closed_form(l, la, m, mu, N);
        CHECK(rel_diff(lhs, with_order(rhs, lhs.order())) < 1e-12);
    }
}

TEST_CASE("Jacobi identity") {
    const int N = 6;
    for (int t = 0; t < 10; ++t) {
        VectorField X = random_singular_field(N, 3), Y = random_singular_field(N, 3),
                    Z = random_singular_field(N, 3);
        VectorField J = bracket(bracket(X, Y), Z) + bracket(bracket(Y, Z), X) + bracket(bracket(Z, X), Y);
        double scale = std::max({1.0, X.max_abs(), Y.max_abs(), Z.max_abs()});
        CHECK(J.max_abs() < 1e-10 * scale * scale * scale);
    }
}

TEST_CASE("bracket order inequality") {
    const int N = 6;
    for (int t = 0; t < 50; ++t) {
        int ox = irand(1, 3), oy = irand(1, 3);
        VectorField X(random_series(N, ox, 3), random_series(N, ox, 3), random_series(N, ox, 3));
        VectorField Y(random_series(N, oy, 3), random_series(N, oy, 3), random_series(N, oy, 3));
        VectorField B = bracket(X, Y);
        CHECK(B.order_of() >= X.order_of() + Y.order_of() - 1);
    }
}

TEST_CASE("monomial expansion") {
    const int N = 5;
    // x^2 d/dx = x S(1,0,0)
    VectorField A(N);
    A.bx.add_term({2, 0, 0}, Complex{1, 0});
    MonomialExpansion ea = monomial_expand(A);
    REQUIRE(ea.size() == 1);
    CHECK(ea[0].k == Exponent{1, 0, 0});
    CHECK(rel_diff(ea[0].mu[0], Complex{1, 0}) < 1e-15);

    // -lam y1 d/dy1 + lam y2 d/dy2 = S(0,-lam,lam)
    Complex lam = crand();
    VectorField B(N);
    B.b1.add_term({0, 1, 0}, -lam);
    B.b2.add_term({0, 0, 1}, lam);
    MonomialExpansion eb = monomial_expand(B);
    REQUIRE(eb.size() == 1);
    CHECK(eb[0].k == Exponent{0, 0, 0});
    CHECK(rel_diff(eb[0].mu[1], -lam) < 1e-15);
    CHECK(rel_diff(eb[0].mu[2], lam) < 1e-15);

    // translation term (2 zeta/5) x d/dy1 lives at k = (1,-1,0)
    Complex z = Complex{0, 1} / std::sqrt(6.0);
    VectorField C(N);
    C.b1.add_term({1, 0, 0}, 0.4 * z);
    MonomialExpansion ec = monomial_expand(C);
    REQUIRE(ec.size() == 1);
    CHECK(ec[0].k == Exponent{1, -1, 0});
    CHECK(rel_diff(ec[0].mu[1], 0.4 * z) < 1e-15);

    // round trip on random singular fields
    for (int t = 0; t < 10; ++t) {
        VectorField X = random_singular_field(N, 4);
        CHECK(rel_diff(assemble(monomial_expand(X), N), X) < 1e-13);
    }

    VectorField bad(N);
    bad.b1.add_term({0, 0, 0}, Complex{1, 0});
    CHECK_THROWS_AS(monomial_expand(bad), NotSingular);
}

TEST_CASE("exp_field") {
    const int N = 4;
    CHECK(rel_diff(exp_field(VectorField(N)), Diffeo::identity(N)) < 1e-15);

    // exp(y1^2 d/dy1) y1 = y1 + y1^2 + y1^3 + y1^4 (time-1 flow of y^2 d/dy)
    VectorField X(N);
    X.b1.add_term({0, 2, 0}, Complex{1, 0});
    Diffeo phi = exp_field(X);
    for (int k = 1; k <= 4; ++k) CHECK(rel_diff(phi.g1().coeff({0, k, 0}), Complex{1, 0}) < 1e-13);

    // exp(X) o exp(-X) = id
    for (int t = 0; t < 6; ++t) {
        VectorField Y = random_order2_field(6);
        Diffeo a = exp_field(Y), b = exp_field(-Y);
        CHECK(rel_diff(compose(a, b), Diffeo::identity(6)) < 1e-11);
        CHECK(rel_diff(compose(b, a), Diffeo::identity(6)) < 1e-11);
    }

    // order-1 shears are accepted (correctors for translation terms)
    VectorField S(N);
    S.b1.add_term({1, 0, 0}, Complex{2, 1}); // (2+i) x d/dy1
    Diffeo sh = exp_field(S);
    CHECK(rel_diff(sh.g1() - TruncatedSeries::variable(Var::y1, N),
                   TruncatedSeries::monomial({1, 0, 0}, Complex{2, 1}, N)) < 1e-14);

    // genuinely non-nilpotent order-1 fields are rejected
    VectorField L(N);
    L.b1.add_term({0, 1, 0}, Complex{1, 0});
    CHECK_THROWS_AS(exp_field(L), OrderTooLow);
}

TEST_CASE("push_forward") {
    const int N = 6;
    VectorField Y = random_singular_field(N, 3);
    CHECK(rel_diff(push_forward(Diffeo::identity(N), Y), Y) < 1e-12);

    // transport by the flow matches exp(-ad)
    for (int t = 0; t < 10; ++t) {
        VectorField X = random_order2_field(N);
        VectorField Z = random_singular_field(N, 3);
        VectorField lhs = push_forward(exp_field(X), Z);
        VectorField rhs = adjoint_series(X, Z, N);
        CHECK(rel_diff(lhs, with_order(rhs, lhs.order())) < 1e-9);
    }
}

TEST_CASE("push_forward functoriality") {
    const int N = 5;
    for (int t = 0; t < 8; ++t) {
        Diffeo phi = random_fibered_diffeo(N), psi = random_fibered_diffeo(N);
        VectorField Y = random_singular_field(N, 3);
        VectorField lhs = push_forward(compose(phi, psi), Y);
        VectorField rhs = push_forward(phi, push_forward(psi, Y));
        CHECK(rel_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("compose_diffeos") {
    const int N = 6;
    CHECK(rel_diff(compose_diffeos({}, N), Diffeo::identity(N)) < 1e-15);

    Diffeo single = random_fibered_diffeo(N);
    CHECK(rel_diff(compose_diffeos({single}, N), single) < 1e-15);

    // increasing tangency orders: modulo m^{d+1} the composition is
    // id + P_2 + ... + P_d
    std::vector<Diffeo> seq;
    std::vector<TruncatedSeries> p1s, p2s;
    for (int d = 2; d <= N; ++d) {
        TruncatedSeries h1 = random_series(N, d, d, 3, 0.4);
        TruncatedSeries h2 = random_series(N, d, d, 3, 0.4);
        p1s.push_back(h1);
        p2s.push_back(h2);
        seq.push_back(Diffeo::fibered(TruncatedSeries::variable(Var::y1, N) + h1,
                                      TruncatedSeries::variable(Var::y2, N) + h2));
    }
    Diffeo total = compose_diffeos(seq, N);
    for (int d = 2; d <= N; ++d) {
        TruncatedSeries want1 = TruncatedSeries::variable(Var::y1, d);
        TruncatedSeries want2 = TruncatedSeries::variable(Var::y2, d);
        for (int j = 2; j <= d; ++j) {
            want1 += p1s[j - 2].with_order(d);
            want2 += p2s[j - 2].with_order(d);
        }
        CHECK(rel_diff(total.g1().with_order(d), want1) < 1e-10);
        CHECK(rel_diff(total.g2().with_order(d), want2) < 1e-10);
    }
}

TEST_CASE("invert_diffeo") {
    const int N = 6;
    CHECK(rel_diff(invert_diffeo(Diffeo::identity(N)), Diffeo::identity(N)) < 1e-14);

    Complex t1 = crand() + Complex{2, 0}, t2 = crand() + Complex{2, 0};
    Diffeo d = Diffeo::diagonal(t1, t2, N);
    Diffeo dinv = invert_diffeo(d);
    CHECK(rel_diff(dinv.g1().coeff({0, 1, 0}), 1.0 / t1) < 1e-13);
    CHECK(rel_diff(dinv.g2().coeff({0, 0, 1}), 1.0 / t2) < 1e-13);

    for (int t = 0; t < 8; ++t) {
        Diffeo phi = random_fibered_diffeo(N);
        Diffeo psi = invert_diffeo(phi);
        CHECK(rel_diff(compose(phi, psi), Diffeo::identity(N)) < 1e-10);
        CHECK(rel_diff(compose(psi, phi), Diffeo::identity(N)) < 1e-10);
    }
}

TEST_CASE("push_forward of diagonal rescales the resonant jets") {
    const int N = 7;
    // conjugating a normal form by diag(1,t1,t2) maps c_i(v) to c_i(v/(t1 t2))
    Complex lam = crand() + Complex{1.5, 0};
    VectorField Z(N);
    Z.bx.add_term({2, 0, 0}, Complex{1, 0});
    Z.b1.add_term({0, 1, 0}, -lam);
    Z.b2.add_term({0, 0, 1}, lam);
    Complex c11 = crand(), c21 = crand();
    Z.b1.add_term({0, 2, 1}, c11);
    Z.b2.add_term({0, 1, 2}, c21);
    Complex t1 = crand() + Complex{1.5, 0}, t2 = crand() + Complex{1.5, 0};
    VectorField moved = push_forward(Diffeo::diagonal(t1, t2, N), Z);
    Complex theta = t1 * t2;
    CHECK(rel_diff(moved.b1.coeff({0, 2, 1}), c11 / theta) < 1e-12);
    CHECK(rel_diff(moved.b2.coeff({0, 1, 2}), c21 / theta) < 1e-12);
}
