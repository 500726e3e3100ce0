#include <doctest.h>

#include "drsn/series.hpp"
#include "testutil.hpp"

using namespace drsn;
using namespace drsn::test;

namespace {
TruncatedSeries brute_mul(const TruncatedSeries& a, const TruncatedSeries& b, int order) {
    // naive double loop, the oracle the fast path must match
    TruncatedSeries out(order);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) out.add_term(ka + kb, ca * cb);
    return out;
}
} // namespace

TEST_CASE("add: identities and termwise merge") {
    const int N = 6;
    TruncatedSeries s = random_series(N, 0, 4);
    CHECK(rel_diff(TruncatedSeries::zero(N) + s, s) < 1e-15);

    // (1+x) + (-1+y1) = x + y1
    TruncatedSeries a = TruncatedSeries::constant(1.0, N) + TruncatedSeries::variable(Var::x, N);
    TruncatedSeries b = TruncatedSeries::constant(-1.0, N) + TruncatedSeries::variable(Var::y1, N);
    TruncatedSeries want = TruncatedSeries::variable(Var::x, N) + TruncatedSeries::variable(Var::y1, N);
    CHECK(rel_diff(a + b, want) < 1e-15);

    for (int i = 0; i < 10; ++i) {
        TruncatedSeries p = random_series(N, 0, 4), q = random_series(N, 0, 4);
        TruncatedSeries merged(N);
        for (const auto& [k, c] : p.terms()) merged.add_term(k, c);
        for (const auto& [k, c] : q.terms()) merged.add_term(k, c);
        CHECK(rel_diff(p + q, merged) < 1e-14);
    }
}

TEST_CASE("mul: unit, binomial, convolution oracle") {
    const int N = 6;
    TruncatedSeries s = random_series(N, 0, 4);
    CHECK(rel_diff(TruncatedSeries::constant(1.0, N) * s, s) < 1e-15);

    TruncatedSeries a = TruncatedSeries::constant(1.0, N) + TruncatedSeries::variable(Var::x, N);
    TruncatedSeries b = TruncatedSeries::constant(1.0, N) + TruncatedSeries::variable(Var::y1, N);
    TruncatedSeries prod = a * b;
    CHECK(rel_diff(prod.coeff({0, 0, 0}), Complex{1, 0}) < 1e-15);
    CHECK(rel_diff(prod.coeff({1, 0, 0}), Complex{1, 0}) < 1e-15);
    CHECK(rel_diff(prod.coeff({0, 1, 0}), Complex{1, 0}) < 1e-15);
    CHECK(rel_diff(prod.coeff({1, 1, 0}), Complex{1, 0}) < 1e-15);

    for (int i = 0; i < 10; ++i) {
        TruncatedSeries p = random_series(N, 0, 3), q = random_series(N, 0, 3);
        CHECK(rel_diff(p * q, brute_mul(p, q, N)) < 1e-14);
    }
}

TEST_CASE("ring axioms at fixed truncation") {
    const int N = 5;
    for (int i = 0; i < 20; ++i) {
        TruncatedSeries a = random_series(N, 0, N), b = random_series(N, 0, N), c = random_series(N, 0, N);
        CHECK(rel_diff(a * b, b * a) < 1e-12);
        CHECK(rel_diff((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(rel_diff(a * (b + c), a * b + a * c) < 1e-12);
    }
}

TEST_CASE("invert_unit") {
    const int N = 4;
    CHECK(rel_diff(invert_unit(TruncatedSeries::constant(1.0, N)), TruncatedSeries::constant(1.0, N)) < 1e-15);

    // 1/(1-x) = 1 + x + x^2 + x^3 + x^4
    TruncatedSeries u = TruncatedSeries::constant(1.0, N) - TruncatedSeries::variable(Var::x, N);
    TruncatedSeries inv = invert_unit(u);
    for (int k = 0; k <= 4; ++k) CHECK(rel_diff(inv.coeff({k, 0, 0}), Complex{1, 0}) < 1e-14);

    for (int i = 0; i < 10; ++i) {
        TruncatedSeries v = TruncatedSeries::constant(crand() + Complex{2.0, 0.0}, 6) + random_series(6, 1, 4);
        CHECK(rel_diff(v * invert_unit(v), TruncatedSeries::constant(1.0, 6)) < 1e-10);
    }

    CHECK_THROWS_AS(invert_unit(TruncatedSeries::variable(Var::x, 4)), NotAUnit);
}

TEST_CASE("substitute") {
    const int N = 6;
    TruncatedSeries f = random_series(N, 0, 4);
    TruncatedSeries id_x = TruncatedSeries::variable(Var::x, N);
    TruncatedSeries id_y1 = TruncatedSeries::variable(Var::y1, N);
    TruncatedSeries id_y2 = TruncatedSeries::variable(Var::y2, N);
    CHECK(rel_diff(substitute(f, id_x, id_y1, id_y2), f) < 1e-14);

    // linear rescaling of y1 y2
    Complex t1 = crand(), t2 = crand();
    TruncatedSeries v12 = id_y1 * id_y2;
    TruncatedSeries got = substitute(v12, id_x, id_y1 * t1, id_y2 * t2);
    CHECK(rel_diff(got, v12 * (t1 * t2)) < 1e-14);

    // (1 + y1 y2)^2 with y1 -> y1, y2 -> y2^2
    TruncatedSeries base = TruncatedSeries::constant(1.0, N) + v12;
    TruncatedSeries sq = base * base;
    TruncatedSeries res = substitute(sq, TruncatedSeries::zero(N), id_y1, id_y2 * id_y2);
    CHECK(rel_diff(res.coeff({0, 0, 0}), Complex{1, 0}) < 1e-14);
    CHECK(rel_diff(res.coeff({0, 1, 2}), Complex{2, 0}) < 1e-14);
    CHECK(rel_diff(res.coeff({0, 2, 4}), Complex{1, 0}) < 1e-14);

    // algebra morphism
    for (int i = 0; i < 8; ++i) {
        TruncatedSeries p = random_series(N, 0, 3), q = random_series(N, 0, 3);
        TruncatedSeries g1 = random_series(N, 1, 2), g2 = random_series(N, 1, 2), g3 = random_series(N, 1, 2);
        TruncatedSeries lhs = substitute(p * q, g1, g2, g3);
        TruncatedSeries rhs = substitute(p, g1, g2, g3) * substitute(q, g1, g2, g3);
        CHECK(rel_diff(lhs, rhs) < 1e-12);
    }

    CHECK_THROWS_AS(substitute(f, TruncatedSeries::constant(1.0, N), id_y1, id_y2), DivergentSubstitution);
}

TEST_CASE("partial_derivative") {
    const int N = 6;
    TruncatedSeries f = TruncatedSeries::monomial({2, 1, 0}, Complex{1, 0}, N); // x^2 y1
    TruncatedSeries d = partial_derivative(f, Var::x);
    CHECK(rel_diff(d.coeff({1, 1, 0}), Complex{2, 0}) < 1e-15);
    CHECK(d.order() == N - 1);

    CHECK(partial_derivative(TruncatedSeries::constant(3.0, N), Var::y1).is_zero());

    // Leibniz
    for (int i = 0; i < 10; ++i) {
        TruncatedSeries p = random_series(N, 0, 3), q = random_series(N, 0, 3);
        for (Var v : {Var::x, Var::y1, Var::y2}) {
            TruncatedSeries lhs = partial_derivative(p * q, v);
            TruncatedSeries rhs = partial_derivative(p, v) * q + p * partial_derivative(q, v);
            CHECK(rel_diff(lhs, rhs) < 1e-12);
        }
    }

    // central finite differences at sample points
    TruncatedSeries g = random_series(5, 0, 4);
    auto eval = [&](Complex x, Complex y1, Complex y2) {
        Complex acc{};
        for (const auto& [k, c] : g.terms())
            acc += c * std::pow(x, k.k0) * std::pow(y1, k.k1) * std::pow(y2, k.k2);
        return acc;
    };
    TruncatedSeries gx = partial_derivative(g, Var::x);
    const double h = 1e-5;
    for (int i = 0; i < 5; ++i) {
        Complex x = crand(0.3), y1 = crand(0.3), y2 = crand(0.3);
        Complex fd = (eval(x + h, y1, y2) - eval(x - h, y1, y2)) / (2.0 * h);
        Complex ex{};
        for (const auto& [k, c] : gx.terms()) ex += c * std::pow(x, k.k0) * std::pow(y1, k.k1) * std::pow(y2, k.k2);
        CHECK(std::abs(fd - ex) / std::max(1.0, std::abs(ex)) < 1e-6);
    }
}

TEST_CASE("univariate inverse") {
    UnivariateSeries v = UnivariateSeries::identity(4);
    CHECK(rel_diff(univariate_inverse(v)[1], Complex{1, 0}) < 1e-15);

    Complex lam = crand() + Complex{2, 0};
    UnivariateSeries lv = v * lam;
    CHECK(rel_diff(univariate_inverse(lv)[1], 1.0 / lam) < 1e-14);

    // inverse of v + v^2 at order 4: v - v^2 + 2v^3 - 5v^4
    UnivariateSeries h(4);
    h.set(1, 1.0);
    h.set(2, 1.0);
    UnivariateSeries g = univariate_inverse(h);
    CHECK(rel_diff(g[1], Complex{1, 0}) < 1e-14);
    CHECK(rel_diff(g[2], Complex{-1, 0}) < 1e-14);
    CHECK(rel_diff(g[3], Complex{2, 0}) < 1e-14);
    CHECK(rel_diff(g[4], Complex{-5, 0}) < 1e-14);

    // both compositions are the identity
    for (int i = 0; i < 10; ++i) {
        UnivariateSeries r(6);
        r.set(1, crand() + Complex{1.5, 0});
        for (int k = 2; k <= 6; ++k) r.set(k, crand());
        UnivariateSeries rinv = univariate_inverse(r);
        UnivariateSeries c1 = compose(r, rinv), c2 = compose(rinv, r);
        for (int k = 0; k <= 6; ++k) {
            Complex want = k == 1 ? Complex{1, 0} : Complex{};
            CHECK(std::abs(c1[k] - want) < 1e-9 * std::max(1.0, r.max_abs()));
            CHECK(std::abs(c2[k] - want) < 1e-9 * std::max(1.0, r.max_abs()));
        }
    }

    UnivariateSeries bad(3);
    bad.set(2, 1.0);
    CHECK_THROWS_AS(univariate_inverse(bad), NotInvertible);
}

TEST_CASE("antiderivative") {
    CHECK(antiderivative(UnivariateSeries::zero(3)).is_zero());
    UnivariateSeries one = UnivariateSeries::constant(1.0, 3);
    CHECK(rel_diff(antiderivative(one)[1], Complex{1, 0}) < 1e-15);
    UnivariateSeries t(4);
    for (int k = 0; k <= 4; ++k) t.set(k, crand());
    UnivariateSeries s = antiderivative(t);
    for (int k = 0; k <= 4; ++k) CHECK(rel_diff(s[k + 1], t[k] / double(k + 1)) < 1e-15);
    CHECK(std::abs(s[0]) == 0.0);
}

TEST_CASE("binomial_power") {
    CHECK(rel_diff(binomial(Complex{-0.5, 0}, 1), Complex{-0.5, 0}) < 1e-15);

    const int N = 2;
    TruncatedSeries one = TruncatedSeries::constant(1.0, N);
    CHECK(rel_diff(binomial_power(one, crand()), one) < 1e-14);

    // (1+x)^(-1/2) = 1 - x/2 + 3x^2/8
    TruncatedSeries u = one + TruncatedSeries::variable(Var::x, N);
    TruncatedSeries p = binomial_power(u, Complex{-0.5, 0});
    CHECK(rel_diff(p.coeff({0, 0, 0}), Complex{1, 0}) < 1e-14);
    CHECK(rel_diff(p.coeff({1, 0, 0}), Complex{-0.5, 0}) < 1e-14);
    CHECK(rel_diff(p.coeff({2, 0, 0}), Complex{0.375, 0}) < 1e-14);

    // (alpha (1+w))^{-(k+1/2)} consistency: square it, multiply by (alpha(1+w))^{2k+1}, expect 1
    for (int k = 0; k <= 2; ++k) {
        const int M = 6;
        TruncatedSeries w = random_series(M, 1, 2, 3, 0.2);
        Complex alpha = crand() + Complex{2, 0};
        TruncatedSeries v = (TruncatedSeries::constant(1.0, M) + w) * alpha;
        TruncatedSeries half = binomial_power(v, -(double(k) + 0.5));
        TruncatedSeries sq = half * half;
        TruncatedSeries back = sq;
        for (int j = 0; j < 2 * k + 1; ++j) back = back * v;
        CHECK(rel_diff(back, TruncatedSeries::constant(1.0, M)) < 1e-9);
    }

    CHECK_THROWS_AS(binomial_power(TruncatedSeries::variable(Var::x, 3), Complex{0.5, 0}), NotAUnit);
}

TEST_CASE("order bookkeeping") {
    TruncatedSeries a = random_series(6, 0, 3), b = random_series(4, 0, 3);
    CHECK((a + b).order() == 4);
    CHECK((a * b).order() == 4);
    CHECK(partial_derivative(a, Var::x).order() == 5);
}

TEST_CASE("zero-coefficient policy keeps sparsity") {
    TruncatedSeries s(4);
    s.add_term({0, 0, 0}, Complex{1.0, 0});
    s.add_term({1, 0, 0}, Complex{1e-14, 0});
    CHECK(s.terms().size() == 1);
    CHECK(s.coeff({1, 0, 0}) == Complex{});
}
