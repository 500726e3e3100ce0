#include "drsn/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace drsn {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, i); }
};

double parse_number(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) ++c.i;
    bool digits = false;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        ++c.i;
        digits = true;
    }
    if (c.i < c.s.size() && c.s[c.i] == '.') {
        ++c.i;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            ++c.i;
            digits = true;
        }
    }
    if (!digits) c.fail("expected a number");
    if (c.i < c.s.size() && (c.s[c.i] == 'e' || c.s[c.i] == 'E')) {
        std::size_t mark = c.i;
        ++c.i;
        if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) ++c.i;
        bool exp_digits = false;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            ++c.i;
            exp_digits = true;
        }
        if (!exp_digits) c.i = mark;
    }
    return std::stod(c.s.substr(start, c.i - start));
}

int parse_exponent(Cursor& c) {
    if (!c.eat('^')) return 1;
    c.skip_ws();
    std::size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) c.fail("expected an integer exponent");
    return std::stoi(c.s.substr(start, c.i - start));
}

// one factor: a variable power or a coefficient literal
struct Factor {
    bool is_var = false;
    int var = 0;
    int exp = 1;
    Complex value{1.0, 0.0};
};

Factor parse_factor(Cursor& c) {
    Factor f;
    char ch = c.peek();
    if (ch == '(') {
        c.eat('(');
        double re = parse_number(c);
        if (!c.eat(',')) c.fail("expected ',' inside coefficient pair");
        double im = parse_number(c);
        if (!c.eat(')')) c.fail("expected ')'");
        f.value = Complex{re, im};
        return f;
    }
    if (ch == 'x') {
        ++c.i;
        f.is_var = true;
        f.var = 0;
        f.exp = parse_exponent(c);
        return f;
    }
    if (ch == 'y') {
        ++c.i;
        if (c.i >= c.s.size() || (c.s[c.i] != '1' && c.s[c.i] != '2')) c.fail("expected y1 or y2");
        f.is_var = true;
        f.var = c.s[c.i] == '1' ? 1 : 2;
        ++c.i;
        f.exp = parse_exponent(c);
        return f;
    }
    if (ch == 'i') { // bare imaginary unit
        ++c.i;
        f.value = Complex{0.0, 1.0};
        return f;
    }
    double v = parse_number(c);
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] == 'i') {
        ++c.i;
        f.value = Complex{0.0, v};
    } else {
        f.value = Complex{v, 0.0};
    }
    return f;
}

} // namespace

TruncatedSeries parse_series(const std::string& text, int order) {
    TruncatedSeries out(order);
    Cursor c{text};
    if (c.done()) return out;
    bool first = true;
    while (!c.done()) {
        double sign = 1.0;
        if (c.eat('+')) {
        } else if (c.eat('-')) {
            sign = -1.0;
        } else if (!first) {
            c.fail("expected '+' or '-' between terms");
        }
        first = false;
        Complex coeff{sign, 0.0};
        Exponent k{0, 0, 0};
        bool more = true;
        while (more) {
            Factor f = parse_factor(c);
            if (f.is_var)
                k[f.var] += f.exp;
            else
                coeff *= f.value;
            more = c.eat('*');
        }
        if (k.total() > order) continue; // beyond truncation: ignored
        out.add_term(k, coeff);
    }
    return out;
}

std::string print_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", z.real(), z.imag());
    return buf;
}

std::string print_series(const TruncatedSeries& s) {
    if (s.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : s.terms()) {
        if (!first) os << " + ";
        first = false;
        os << print_complex(c);
        if (k.k0 > 0) {
            os << "*x";
            if (k.k0 > 1) os << '^' << k.k0;
        }
        if (k.k1 > 0) {
            os << "*y1";
            if (k.k1 > 1) os << '^' << k.k1;
        }
        if (k.k2 > 0) {
            os << "*y2";
            if (k.k2 > 1) os << '^' << k.k2;
        }
    }
    return os.str();
}

VectorField parse_field(const std::string& text, int order) {
    std::istringstream in(text);
    std::string line;
    TruncatedSeries comp[3] = {TruncatedSeries(order), TruncatedSeries(order), TruncatedSeries(order)};
    bool seen[3] = {false, false, false};
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t h = line.find_first_not_of(" \t\r");
        if (h == std::string::npos || line[h] == '#') continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'dx:', 'dy1:' or 'dy2:' prefix", lineno);
        std::string tag = line.substr(h, colon - h);
        while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.pop_back();
        int idx;
        if (tag == "dx")
            idx = 0;
        else if (tag == "dy1")
            idx = 1;
        else if (tag == "dy2")
            idx = 2;
        else
            throw ParseError("unknown component '" + tag + "'", lineno);
        if (seen[idx]) throw ParseError("duplicate component '" + tag + "'", lineno);
        seen[idx] = true;
        comp[idx] = parse_series(line.substr(colon + 1), order);
    }
    if (!(seen[0] && seen[1] && seen[2])) throw ParseError("missing dx/dy1/dy2 component line", lineno);
    return VectorField(comp[0], comp[1], comp[2]);
}

std::string print_field(const VectorField& f) {
    std::ostringstream os;
    os << "dx: " << print_series(f.bx) << "\n";
    os << "dy1: " << print_series(f.b1) << "\n";
    os << "dy2: " << print_series(f.b2) << "\n";
    return os.str();
}

} // namespace drsn
