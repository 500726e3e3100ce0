#include "drsn/series.hpp"

#include <algorithm>
#include <cmath>

namespace drsn {

TruncatedSeries TruncatedSeries::constant(Complex c, int order) {
    TruncatedSeries s(order);
    s.add_term({0, 0, 0}, c);
    return s;
}

TruncatedSeries TruncatedSeries::variable(Var v, int order) {
    return monomial(v == Var::x ? Exponent{1, 0, 0} : (v == Var::y1 ? Exponent{0, 1, 0} : Exponent{0, 0, 1}),
                    Complex{1.0, 0.0}, order);
}

TruncatedSeries TruncatedSeries::monomial(Exponent k, Complex c, int order) {
    TruncatedSeries s(order);
    s.add_term(k, c);
    return s;
}

Complex TruncatedSeries::coeff(Exponent k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Complex{} : it->second;
}

int TruncatedSeries::order_of() const {
    if (terms_.empty()) return order_ + 1;
    return terms_.begin()->first.total(); // map is graded
}

double TruncatedSeries::max_abs() const {
    double m = 0.0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void TruncatedSeries::add_term(Exponent k, Complex c) {
    if (k.total() > order_) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) it->second += c;
    trim();
}

TruncatedSeries TruncatedSeries::with_order(int order) const {
    TruncatedSeries out(order);
    for (const auto& [k, c] : terms_)
        if (k.total() <= order) out.terms_.emplace(k, c);
    return out;
}

void TruncatedSeries::trim() {
    double thr = ZETA_TOL * std::max(1.0, max_abs());
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= thr)
            it = terms_.erase(it);
        else
            ++it;
    }
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
    order_ = std::min(order_, rhs.order_);
    for (const auto& [k, c] : rhs.terms_) {
        if (k.total() > order_) continue;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) it->second += c;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.total() > order_)
            it = terms_.erase(it);
        else
            ++it;
    }
    trim();
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) { return *this += -rhs; }

TruncatedSeries& TruncatedSeries::operator*=(Complex c) {
    for (auto& [k, v] : terms_) v *= c;
    trim();
    return *this;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()));
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            Exponent k = ka + kb;
            if (k.total() > out.order()) continue;
            auto [it, inserted] = out.terms_.emplace(k, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    out.trim();
    return out;
}

Complex binomial(Complex s, int k) {
    Complex r{1.0, 0.0};
    for (int j = 0; j < k; ++j) r *= (s - Complex(double(j), 0.0)) / Complex(double(j + 1), 0.0);
    return r;
}

TruncatedSeries invert_unit(const TruncatedSeries& u) {
    Complex c = u.constant_term();
    if (std::abs(c) <= ZETA_TOL * std::max(1.0, u.max_abs())) throw NotAUnit();
    // u = c (1 + w), ord(w) >= 1  =>  1/u = (1/c) sum (-w)^j
    TruncatedSeries w = u * (Complex{1.0, 0.0} / c);
    w.add_term({0, 0, 0}, Complex{-1.0, 0.0});
    TruncatedSeries out = TruncatedSeries::constant(Complex{1.0, 0.0} / c, u.order());
    TruncatedSeries pw = TruncatedSeries::constant(Complex{1.0, 0.0}, u.order());
    for (int j = 1; j <= u.order(); ++j) {
        pw = mul(pw, w);
        if (pw.is_zero()) break;
        out += pw * (std::pow(-1.0, j) / c);
    }
    return out;
}

TruncatedSeries substitute(const TruncatedSeries& f, const TruncatedSeries& gx, const TruncatedSeries& g1,
                           const TruncatedSeries& g2) {
    const TruncatedSeries* g[3] = {&gx, &g1, &g2};
    int out_order = f.order();
    for (int i = 0; i < 3; ++i) {
        out_order = std::min(out_order, g[i]->order());
        double thr = ZETA_TOL * std::max(1.0, g[i]->max_abs());
        if (std::abs(g[i]->constant_term()) > thr) throw DivergentSubstitution();
    }
    Exponent maxk{0, 0, 0};
    for (const auto& [k, c] : f.terms())
        for (int i = 0; i < 3; ++i) maxk[i] = std::max(maxk[i], k[i]);
    // power tables
    std::array<std::vector<TruncatedSeries>, 3> pow;
    for (int i = 0; i < 3; ++i) {
        pow[i].push_back(TruncatedSeries::constant(Complex{1.0, 0.0}, out_order));
        for (int p = 1; p <= maxk[i]; ++p) pow[i].push_back(mul(pow[i].back(), g[i]->with_order(out_order)));
    }
    TruncatedSeries out(out_order);
    for (const auto& [k, c] : f.terms()) {
        TruncatedSeries t = mul(mul(pow[0][k.k0], pow[1][k.k1]), pow[2][k.k2]);
        out += t * c;
    }
    return out;
}

TruncatedSeries partial_derivative(const TruncatedSeries& f, Var v) {
    int i = static_cast<int>(v);
    TruncatedSeries out(std::max(0, f.order() - 1));
    for (const auto& [k, c] : f.terms()) {
        if (k[i] == 0) continue;
        Exponent kk = k;
        kk[i] -= 1;
        if (kk.total() > out.order()) continue;
        out.add_term(kk, c * double(k[i]));
    }
    return out;
}

TruncatedSeries binomial_power(const TruncatedSeries& u, Complex s) {
    Complex c = u.constant_term();
    if (std::abs(c) <= ZETA_TOL * std::max(1.0, u.max_abs())) throw NotAUnit();
    TruncatedSeries w = u * (Complex{1.0, 0.0} / c);
    w.add_term({0, 0, 0}, Complex{-1.0, 0.0}); // w = u/c - 1, ord >= 1
    Complex cs = std::pow(c, s);
    TruncatedSeries out = TruncatedSeries::constant(cs, u.order());
    TruncatedSeries pw = TruncatedSeries::constant(Complex{1.0, 0.0}, u.order());
    for (int j = 1; j <= u.order(); ++j) {
        pw = mul(pw, w);
        if (pw.is_zero()) break;
        out += pw * (cs * binomial(s, j));
    }
    return out;
}

// ---------------------------------------------------------------------------

UnivariateSeries::UnivariateSeries(std::vector<Complex> coeffs, int order)
    : c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(order) + 1, Complex{});
    trim();
}

UnivariateSeries UnivariateSeries::constant(Complex v, int order) {
    UnivariateSeries s(order);
    s.c_[0] = v;
    return s;
}

UnivariateSeries UnivariateSeries::identity(int order) {
    UnivariateSeries s(order);
    if (order >= 1) s.c_[1] = Complex{1.0, 0.0};
    return s;
}

void UnivariateSeries::set(int k, Complex v) {
    if (k >= 0 && k < static_cast<int>(c_.size())) c_[k] = v;
}

bool UnivariateSeries::is_zero() const {
    for (Complex v : c_)
        if (v != Complex{}) return false;
    return true;
}

int UnivariateSeries::order_of() const {
    for (int k = 0; k < static_cast<int>(c_.size()); ++k)
        if (c_[k] != Complex{}) return k;
    return order() + 1;
}

double UnivariateSeries::max_abs() const {
    double m = 0.0;
    for (Complex v : c_) m = std::max(m, std::abs(v));
    return m;
}

UnivariateSeries UnivariateSeries::truncated(int order) const {
    UnivariateSeries out(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) out.c_[k] = c_[k];
    return out;
}

void UnivariateSeries::trim() {
    double thr = ZETA_TOL * std::max(1.0, max_abs());
    for (Complex& v : c_)
        if (std::abs(v) <= thr) v = Complex{};
}

UnivariateSeries UnivariateSeries::operator-() const {
    UnivariateSeries out = *this;
    for (Complex& v : out.c_) v = -v;
    return out;
}

UnivariateSeries& UnivariateSeries::operator+=(const UnivariateSeries& rhs) {
    int n = std::min(order(), rhs.order());
    c_.resize(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) c_[k] += rhs.c_[k];
    trim();
    return *this;
}

UnivariateSeries& UnivariateSeries::operator-=(const UnivariateSeries& rhs) { return *this += -rhs; }

UnivariateSeries& UnivariateSeries::operator*=(Complex v) {
    for (Complex& u : c_) u *= v;
    trim();
    return *this;
}

UnivariateSeries operator*(const UnivariateSeries& a, const UnivariateSeries& b) {
    int n = std::min(a.order(), b.order());
    UnivariateSeries out(n);
    for (int i = 0; i <= a.order(); ++i) {
        if (a[i] == Complex{}) continue;
        for (int j = 0; j <= n - i && j <= b.order(); ++j) out.set(i + j, out[i + j] + a[i] * b[j]);
    }
    out.trim();
    return out;
}

UnivariateSeries compose(const UnivariateSeries& h, const UnivariateSeries& g) {
    if (std::abs(g[0]) > ZETA_TOL * std::max(1.0, g.max_abs())) throw DivergentSubstitution();
    int n = std::min(h.order(), g.order());
    UnivariateSeries out = UnivariateSeries::constant(h[0], n);
    UnivariateSeries p = UnivariateSeries::constant(Complex{1.0, 0.0}, n);
    for (int k = 1; k <= h.order(); ++k) {
        p = p * g;
        if (p.is_zero()) break;
        out += p * h[k];
    }
    return out;
}

UnivariateSeries univariate_inverse(const UnivariateSeries& h) {
    double scale = std::max(1.0, h.max_abs());
    if (std::abs(h[0]) > ZETA_TOL * scale || std::abs(h[1]) <= ZETA_TOL * scale)
        throw NotInvertible("series must vanish at 0 with nonzero linear coefficient");
    int n = h.order();
    // degree-by-degree undetermined coefficients: coefficient of t^d in h(g)
    // is h1*g_d + (terms with g_{<d} only)
    UnivariateSeries g(n);
    g.set(1, Complex{1.0, 0.0} / h[1]);
    for (int d = 2; d <= n; ++d) {
        UnivariateSeries comp = compose(h.truncated(n), g);
        g.set(d, -comp[d] / h[1]);
    }
    g.trim();
    return g;
}

UnivariateSeries derivative(const UnivariateSeries& f) {
    UnivariateSeries out(std::max(0, f.order() - 1));
    for (int k = 1; k <= f.order(); ++k) out.set(k - 1, f[k] * double(k));
    out.trim();
    return out;
}

UnivariateSeries antiderivative(const UnivariateSeries& f) {
    UnivariateSeries out(f.order() + 1);
    for (int k = 0; k <= f.order(); ++k) out.set(k + 1, f[k] / double(k + 1));
    out.trim();
    return out;
}

UnivariateSeries binomial_power(const UnivariateSeries& u, Complex s) {
    Complex c = u[0];
    if (std::abs(c) <= ZETA_TOL * std::max(1.0, u.max_abs())) throw NotAUnit();
    UnivariateSeries w = u * (Complex{1.0, 0.0} / c);
    w.set(0, Complex{});
    Complex cs = std::pow(c, s);
    UnivariateSeries out = UnivariateSeries::constant(cs, u.order());
    UnivariateSeries p = UnivariateSeries::constant(Complex{1.0, 0.0}, u.order());
    for (int j = 1; j <= u.order(); ++j) {
        p = p * w;
        if (p.is_zero()) break;
        out += p * (cs * binomial(s, j));
    }
    return out;
}

UnivariateSeries invert_unit(const UnivariateSeries& u) { return binomial_power(u, Complex{-1.0, 0.0}); }

UnivariateSeries to_univariate(const TruncatedSeries& f, Var v) {
    int i = static_cast<int>(v);
    UnivariateSeries out(f.order());
    for (const auto& [k, c] : f.terms()) {
        for (int j = 0; j < 3; ++j)
            if (j != i && k[j] != 0) throw MalformedInput("series involves more than the requested variable");
        out.set(k[i], c);
    }
    out.trim();
    return out;
}

TruncatedSeries from_univariate(const UnivariateSeries& f, Var v, int order) {
    TruncatedSeries out(order);
    Exponent e{0, 0, 0};
    for (int k = 0; k <= f.order(); ++k) {
        if (f[k] == Complex{}) continue;
        e[static_cast<int>(v)] = k;
        out.add_term(e, f[k]);
    }
    return out;
}

} // namespace drsn
