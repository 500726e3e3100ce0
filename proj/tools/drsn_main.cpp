#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "drsn/forms.hpp"
#include "drsn/io.hpp"
#include "drsn/normalform.hpp"
#include "drsn/periods.hpp"

using json = nlohmann::json;
using namespace drsn;

namespace {

json jc(Complex z) { return json::array({z.real(), z.imag()}); }

json jet_json(const UnivariateSeries& j) {
    json coeffs = json::array();
    for (int k = 1; k <= j.order(); ++k) coeffs.push_back(jc(j[k]));
    return json{{"start", 1}, {"coeffs", coeffs}};
}

std::string fmt(Complex z) { return print_complex(z); }

struct Options {
    int order = 8;
    int v_order = -1;
    double tolerance = 1e-9;
    bool use_json = false;
    bool painleve1 = false;
    std::string input_path;
};

struct LoadedField {
    VectorField field;
    bool prediagonalized = false;
    Diffeo change;
    std::string source;
};

VectorField read_field(const Options& opt) {
    if (opt.input_path.empty()) throw MalformedInput("no input: pass --input <path> or --painleve1");
    std::ifstream in(opt.input_path);
    if (!in) throw MalformedInput("cannot open '" + opt.input_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_field(buf.str(), opt.order);
}

// For --painleve1 the built-in field is first put into diag(-lambda,lambda)
// frame through the unimodular eigenbasis change; user fields must already
// be diagonal.
LoadedField load_field(const Options& opt) {
    LoadedField out;
    if (opt.painleve1) {
        auto diag = painleve1_diagonalized(opt.order);
        out.field = diag.field;
        out.prediagonalized = true;
        out.change = diag.change;
        out.source = "painleve1";
    } else {
        out.field = read_field(opt);
        out.change = Diffeo::identity(opt.order);
        out.source = opt.input_path;
    }
    return out;
}

void check_jet_order(const Options& opt) {
    if (opt.v_order < 0) return;
    if (opt.order < 2 * opt.v_order + 2)
        throw MalformedInput("v-order " + std::to_string(opt.v_order) + " needs order >= " +
                             std::to_string(2 * opt.v_order + 2) + " (got " + std::to_string(opt.order) + ")");
}

json pre_transform_json(const LoadedField& lf) {
    json out{{"applied", lf.prediagonalized}};
    if (lf.prediagonalized) {
        auto L = lf.change.linear_part();
        out["y_matrix"] = json::array({json::array({jc(L[1][1]), jc(L[1][2])}),
                                       json::array({jc(L[2][1]), jc(L[2][2])})});
    }
    return out;
}

int cmd_residue(const Options& opt) {
    LoadedField lf = load_field(opt);
    auto input = SaddleNodeInput::validate(lf.field, opt.tolerance);
    Complex r = residue(input);
    if (opt.use_json)
        std::cout << json{{"command", "residue"}, {"residue", jc(r)}}.dump(2) << "\n";
    else
        std::cout << "residue: " << fmt(r) << "\n";
    return 0;
}

int cmd_normalize(const Options& opt) {
    check_jet_order(opt);
    LoadedField lf = load_field(opt);
    auto input = SaddleNodeInput::validate(lf.field, opt.tolerance);
    NormalizationResult res = normalize(input, opt.order);
    int M = opt.v_order >= 0 ? opt.v_order : res.guaranteed_v_order;
    NormalFormParams p = res.params;
    p.c1_jet = p.c1_jet.truncated(M);
    p.c2_jet = p.c2_jet.truncated(M);
    if (opt.use_json) {
        json out{{"command", "normalize"},
                 {"order", opt.order},
                 {"v_order", M},
                 {"lambda", jc(p.lambda)},
                 {"a1", jc(p.a1)},
                 {"a2", jc(p.a2)},
                 {"residue", jc(p.residue())},
                 {"c1", jet_json(p.c1_jet)},
                 {"c2", jet_json(p.c2_jet)},
                 {"pre_transform", pre_transform_json(lf)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lambda: " << fmt(p.lambda) << "\n";
        std::cout << "a1: " << fmt(p.a1) << "\na2: " << fmt(p.a2) << "\n";
        std::cout << "residue: " << fmt(p.residue()) << "\n";
        for (int k = 1; k <= M; ++k) std::cout << "c1[v^" << k << "]: " << fmt(p.c1_jet[k]) << "\n";
        for (int k = 1; k <= M; ++k) std::cout << "c2[v^" << k << "]: " << fmt(p.c2_jet[k]) << "\n";
        if (lf.prediagonalized) std::cout << "pre-transform: unimodular eigenbasis change applied\n";
    }
    return 0;
}

int cmd_check_hamiltonian(const Options& opt) {
    LoadedField lf = load_field(opt);
    bool direct = is_transversally_hamiltonian(lf.field, opt.tolerance);
    bool monomial = is_transversally_hamiltonian_monomialwise(lf.field, opt.tolerance);
    if (opt.use_json)
        std::cout << json{{"command", "check-hamiltonian"},
                          {"transversally_hamiltonian", direct},
                          {"monomialwise", monomial}}
                         .dump(2)
                  << "\n";
    else
        std::cout << "transversally hamiltonian: " << (direct ? "yes" : "no")
                  << "\nmonomialwise criterion: " << (monomial ? "yes" : "no") << "\n";
    return 0;
}

int cmd_periods(const Options& opt, Complex beta, Complex alpha, const std::string& ftext) {
    int M = opt.v_order >= 0 ? opt.v_order : 3;
    PlanarHamiltonian H = [&] {
        if (opt.painleve1) return painleve1_hamiltonian(2 * M + 2);
        UnivariateSeries f = to_univariate(parse_series(ftext, 2 * M + 2), Var::y1);
        return PlanarHamiltonian::validate(beta, alpha, f);
    }();
    PeriodSeries T = period_series(H, M);
    PeriodInvariant inv = invariant_from_periods(T);
    if (opt.use_json) {
        json tt = json::array();
        for (Complex t : T.coeffs) tt.push_back(jc(t));
        std::cout << json{{"command", "periods"},
                          {"v_order", M},
                          {"lambda", jc(inv.lambda)},
                          {"T", tt},
                          {"c", jet_json(inv.c_jet)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "lambda: " << fmt(inv.lambda) << "\n";
        for (int k = 0; k <= T.order(); ++k) std::cout << "T[" << k << "]: " << fmt(T[k]) << "\n";
        for (int k = 1; k <= M; ++k) std::cout << "c[v^" << k << "]: " << fmt(inv.c_jet[k]) << "\n";
    }
    return 0;
}

int cmd_compare(const Options& opt) {
    if (!opt.painleve1) throw MalformedInput("compare currently supports --painleve1 only");
    int M = opt.v_order >= 0 ? opt.v_order : (opt.order - 2) / 2;
    Options o = opt;
    o.v_order = M;
    check_jet_order(o);

    auto diag = painleve1_diagonalized(opt.order);
    auto input = SaddleNodeInput::validate(diag.field, opt.tolerance);
    NormalizationResult res = normalize(input, opt.order);
    UnivariateSeries c_nf = res.params.c_jet().truncated(M);

    PlanarHamiltonian H = painleve1_hamiltonian(2 * M + 2);
    PeriodSeries T = period_series(H, M);
    PeriodInvariant inv = invariant_from_periods(T);
    UnivariateSeries c_p = inv.c_jet.truncated(M);

    double maxdev = std::abs(res.params.lambda - inv.lambda) / std::abs(inv.lambda);
    for (int k = 1; k <= M; ++k) {
        double denom = std::max(std::abs(c_p[k]), 1e-30);
        maxdev = std::max(maxdev, std::abs(c_nf[k] - c_p[k]) / denom);
    }

    if (opt.use_json) {
        json out{{"command", "compare"},
                 {"order", opt.order},
                 {"v_order", M},
                 {"normalization", json{{"lambda", jc(res.params.lambda)}, {"c", jet_json(c_nf)}}},
                 {"periods", json{{"lambda", jc(inv.lambda)}, {"c", jet_json(c_p)}}},
                 {"max_rel_deviation", maxdev}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "lambda (normalization): " << fmt(res.params.lambda) << "\n";
        std::cout << "lambda (periods):       " << fmt(inv.lambda) << "\n";
        for (int k = 1; k <= M; ++k) {
            std::cout << "c[v^" << k << "] (normalization): " << fmt(c_nf[k]) << "\n";
            std::cout << "c[v^" << k << "] (periods):       " << fmt(c_p[k]) << "\n";
        }
        std::cout << "max relative deviation: " << maxdev << "\n";
    }
    return 0;
}

int cmd_isotropy(const Options& opt) {
    check_jet_order(opt);
    LoadedField lf = load_field(opt);
    auto input = SaddleNodeInput::validate(lf.field, opt.tolerance);
    NormalizationResult res = normalize(input, opt.order);
    IsotropyDescription iso = isotropy_group(res.params);
    if (opt.use_json) {
        json out{{"command", "isotropy"}, {"unconstrained", iso.unconstrained()}};
        if (!iso.unconstrained()) out["q"] = iso.q;
        std::cout << out.dump(2) << "\n";
    } else if (iso.unconstrained()) {
        std::cout << "isotropies: diag(1,t1,t2) with any t1*t2 (both c-jets vanish)\n";
    } else {
        std::cout << "isotropies: diag(1,t1,t2) with (t1*t2)^" << iso.q << " = 1\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"formal normal forms for doubly-resonant saddle-nodes in C^3"};
    app.require_subcommand(1);

    Options opt;
    double beta_re = 0, beta_im = 0, alpha_re = 0, alpha_im = 0;
    std::string ftext = "0";

    auto add_common = [&](CLI::App* cmd, bool field_input = true) {
        cmd->add_option("--order", opt.order, "truncation total degree")->check(CLI::Range(2, 64));
        cmd->add_option("--v-order", opt.v_order, "jet order in v = y1*y2");
        cmd->add_option("--tolerance", opt.tolerance, "numeric tolerance for structural checks");
        cmd->add_flag("--json", opt.use_json, "machine-readable output");
        if (field_input) {
            cmd->add_flag("--painleve1", opt.painleve1, "use the built-in Painleve-I field");
            cmd->add_option("--input", opt.input_path, "vector field file (dx:/dy1:/dy2: lines)");
        }
    };

    auto* c_res = app.add_subcommand("residue", "residue of a saddle-node field");
    add_common(c_res);
    auto* c_norm = app.add_subcommand("normalize", "compute the formal normal form");
    add_common(c_norm);
    auto* c_ham = app.add_subcommand("check-hamiltonian", "test the transversally Hamiltonian structure");
    add_common(c_ham);
    auto* c_per = app.add_subcommand("periods", "period series and invariant of a planar Hamiltonian");
    add_common(c_per, false);
    c_per->add_flag("--painleve1", opt.painleve1, "use the built-in Painleve-I Hamiltonian");
    c_per->add_option("--beta-re", beta_re, "Re(beta)");
    c_per->add_option("--beta-im", beta_im, "Im(beta)");
    c_per->add_option("--alpha-re", alpha_re, "Re(alpha)");
    c_per->add_option("--alpha-im", alpha_im, "Im(alpha)");
    c_per->add_option("--f", ftext, "series in y1 of order >= 3");
    auto* c_cmp = app.add_subcommand("compare", "normal-form invariant vs period invariant");
    add_common(c_cmp);
    auto* c_iso = app.add_subcommand("isotropy", "isotropy group of the normal form");
    add_common(c_iso);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_res)) return cmd_residue(opt);
        if (app.got_subcommand(c_norm)) return cmd_normalize(opt);
        if (app.got_subcommand(c_ham)) return cmd_check_hamiltonian(opt);
        if (app.got_subcommand(c_per))
            return cmd_periods(opt, Complex{beta_re, beta_im}, Complex{alpha_re, alpha_im}, ftext);
        if (app.got_subcommand(c_cmp)) return cmd_compare(opt);
        if (app.got_subcommand(c_iso)) return cmd_isotropy(opt);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << " (near position " << e.position << ")\n";
        return 2;
    } catch (const Degenerate& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
