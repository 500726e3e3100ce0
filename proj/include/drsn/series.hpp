#ifndef DRSN_SERIES_HPP
#define DRSN_SERIES_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "drsn/errors.hpp"

namespace drsn {

using Complex = std::complex<double>;

// Relative threshold below which a coefficient counts as zero.  A coefficient
// z of a series with largest magnitude m is dropped iff |z| <= ZETA_TOL * max(1, m).
inline constexpr double ZETA_TOL = 1e-12;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

enum class Var : int { x = 0, y1 = 1, y2 = 2 };

// Exponent triple of a monomial x^k0 y1^k1 y2^k2.
struct Exponent {
    int k0 = 0, k1 = 0, k2 = 0;

    int total() const { return k0 + k1 + k2; }
    int operator[](int i) const { return i == 0 ? k0 : (i == 1 ? k1 : k2); }
    int& operator[](int i) { return i == 0 ? k0 : (i == 1 ? k1 : k2); }

    friend Exponent operator+(Exponent a, Exponent b) { return {a.k0 + b.k0, a.k1 + b.k1, a.k2 + b.k2}; }
    friend bool operator==(Exponent a, Exponent b) { return a.k0 == b.k0 && a.k1 == b.k1 && a.k2 == b.k2; }
};

// Graded-lexicographic order: lower total degree first; within a degree,
// x-heavier monomials first.  Fixes the iteration and printing order.
struct GradedLexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        int da = a.total(), db = b.total();
        if (da != db) return da < db;
        if (a.k0 != b.k0) return a.k0 > b.k0;
        if (a.k1 != b.k1) return a.k1 > b.k1;
        return a.k2 > b.k2;
    }
};

// Formal power series in (x, y1, y2) over C, truncated at a total degree.
// Invariant: stored coefficients are exactly the coefficients of the series
// it denotes for every total degree <= order(); nothing is stored beyond
// order() and numerically-zero coefficients are dropped.
class TruncatedSeries {
public:
    using TermMap = std::map<Exponent, Complex, GradedLexLess>;

    TruncatedSeries() = default;
    explicit TruncatedSeries(int order) : order_(order) {}

    static TruncatedSeries zero(int order) { return TruncatedSeries(order); }
    static TruncatedSeries constant(Complex c, int order);
    static TruncatedSeries variable(Var v, int order);
    static TruncatedSeries monomial(Exponent k, Complex c, int order);

    int order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Complex coeff(Exponent k) const;
    Complex constant_term() const { return coeff({0, 0, 0}); }

    // Krull order: least total degree carrying a nonzero term.  A zero series
    // reports order()+1 as an "infinite within the window" sentinel.
    int order_of() const;

    double max_abs() const;

    // Adds c at exponent k (dropped if |k| > order); re-trims.
    void add_term(Exponent k, Complex c);

    // Re-declares the truncation order.  Raising it asserts the caller knows
    // the hidden coefficients vanish (used for exactly-known polynomials);
    // lowering it drops terms.
    TruncatedSeries with_order(int order) const;

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);
    TruncatedSeries& operator*=(Complex c);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(TruncatedSeries a, Complex c) { return a *= c; }
    friend TruncatedSeries operator*(Complex c, TruncatedSeries a) { return a *= c; }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return mul(a, b); }

    friend TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

    // Drops numerically-zero terms (relative policy above).
    void trim();

private:
    int order_ = 0;
    TermMap terms_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);

// Multiplicative inverse of a unit, to the order of u.
TruncatedSeries invert_unit(const TruncatedSeries& u);

// f(gx, g1, g2).  Every substituted component must have numerically-zero
// constant term, otherwise the truncated data cannot determine the result.
TruncatedSeries substitute(const TruncatedSeries& f, const TruncatedSeries& gx, const TruncatedSeries& g1,
                           const TruncatedSeries& g2);

// Termwise partial derivative; result order is order(f) - 1.
TruncatedSeries partial_derivative(const TruncatedSeries& f, Var v);

// (c(1+w))^s with c != 0, ord(w) >= 1; principal branch of c^s.
TruncatedSeries binomial_power(const TruncatedSeries& u, Complex s);

// Generalized binomial coefficient binom(s, k) = s(s-1)...(s-k+1)/k!.
Complex binomial(Complex s, int k);

// ---------------------------------------------------------------------------
// Univariate truncated series (used for jets in v, periods in a, f(y1), ...).
// Same zero-coefficient policy as TruncatedSeries. Coefficient k is the
// coefficient of t^k in the abstract variable t.
class UnivariateSeries {
public:
    UnivariateSeries() = default;
    explicit UnivariateSeries(int order) : c_(static_cast<std::size_t>(order) + 1, Complex{}) {}
    UnivariateSeries(std::vector<Complex> coeffs, int order);

    static UnivariateSeries zero(int order) { return UnivariateSeries(order); }
    static UnivariateSeries constant(Complex v, int order);
    static UnivariateSeries identity(int order); // t itself

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Complex operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Complex{}; }
    void set(int k, Complex v);
    const std::vector<Complex>& coeffs() const { return c_; }

    bool is_zero() const;
    int order_of() const;
    double max_abs() const;
    UnivariateSeries truncated(int order) const;

    UnivariateSeries operator-() const;
    UnivariateSeries& operator+=(const UnivariateSeries& rhs);
    UnivariateSeries& operator-=(const UnivariateSeries& rhs);
    UnivariateSeries& operator*=(Complex v);
    friend UnivariateSeries operator+(UnivariateSeries a, const UnivariateSeries& b) { return a += b; }
    friend UnivariateSeries operator-(UnivariateSeries a, const UnivariateSeries& b) { return a -= b; }
    friend UnivariateSeries operator*(UnivariateSeries a, Complex v) { return a *= v; }
    friend UnivariateSeries operator*(Complex v, UnivariateSeries a) { return a *= v; }
    friend UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b);

    void trim();

private:
    std::vector<Complex> c_ = {Complex{}};
};

// h(g(t)) for g with g(0) = 0.
UnivariateSeries compose(const UnivariateSeries& h, const UnivariateSeries& g);

// Compositional inverse g of h (h(0) = 0, h'(0) != 0): h(g(t)) = g(h(t)) = t.
UnivariateSeries univariate_inverse(const UnivariateSeries& h);

UnivariateSeries derivative(const UnivariateSeries& f);

// Termwise t^k -> t^{k+1}/(k+1); constant of integration 0; order grows by 1.
UnivariateSeries antiderivative(const UnivariateSeries& f);

// (c(1+w))^s for a univariate unit, principal branch of c^s.
UnivariateSeries binomial_power(const UnivariateSeries& u, Complex s);

UnivariateSeries invert_unit(const UnivariateSeries& u);

// Extracts a series that only involves the given variable into univariate form.
UnivariateSeries to_univariate(const TruncatedSeries& f, Var v);
TruncatedSeries from_univariate(const UnivariateSeries& f, Var v, int order);

} // namespace drsn

#endif
