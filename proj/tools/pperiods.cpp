// pperiods: command-line front end for the capped-precision weight-space
// distribution library. Every subcommand prints a deterministic JSON envelope
//   {"config": ..., "result": ..., "certified_error_exp": ...}
// on success (exit 0). Precondition violations exit 2 with a machine-readable
// error code; malformed input exits 1.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "periods/json_io.hpp"
#include "periods/selftest.hpp"

using namespace periods;

namespace {

struct Config {
    long p = 3;
    int N = 24;
    int D = 64;
    int M = 64;
    int m = 0;      // ambient cyclotomic level for element expressions
    int m_max = 3;
    std::string gamma_text = "1+p";

    FieldDesc field() const { return FieldDesc{p, m, N}; }
    mpz_class gamma() const { return gamma_from_text(p, gamma_text); }

    json to_json_obj() const {
        json j;
        j["p"] = p;
        j["N"] = N;
        j["D"] = D;
        j["M"] = M;
        j["gamma"] = gamma_text;
        j["m_max"] = m_max;
        return j;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts inline JSON, @file indirection, or a bare expression string.
json arg_json(const std::string& s) {
    std::string text = (!s.empty() && s.front() == '@') ? slurp(s.substr(1)) : s;
    size_t i = text.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && (text[i] == '{' || text[i] == '[')) return json::parse(text);
    return json(text);
}

PadicElement arg_element(const Config& cfg, const std::string& s) {
    return element_from_any(cfg.field(), arg_json(s));
}

json result_envelope(const Config& cfg, json result, json err_exp) {
    json env;
    env["config"] = cfg.to_json_obj();
    env["result"] = std::move(result);
    env["certified_error_exp"] = std::move(err_exp);
    return env;
}

json element_result(const Config& cfg, const PadicElement& x) {
    return result_envelope(cfg, to_json(x), rat_to_string(Rat(-x.aprec())));
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

WeightPoint arg_point(const Config& cfg, const std::string& s) {
    json j = arg_json(s);
    if (j.is_object() && j.contains("t")) return weight_point_from_json(j);
    // bare expression: the disk parameter with default component and gamma
    return WeightPoint(0, element_from_any(cfg.field(), j), cfg.gamma());
}

QuotientPoint arg_quotient(const Config& cfg, const std::string& s) {
    json j = arg_json(s);
    if (j.is_object() && (j.contains("theta") || j.contains("t")))
        return quotient_point_from_json(j);
    return quotient_class(arg_point(cfg, s));
}

int run(int argc, char** argv) {
    CLI::App app{"capped-precision p-adic weight-space distributions"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--p", cfg.p, "odd prime")->capture_default_str();
    app.add_option("--N", cfg.N, "absolute precision")->capture_default_str();
    app.add_option("--D", cfg.D, "series truncation degree")->capture_default_str();
    app.add_option("--M", cfg.M, "moment truncation")->capture_default_str();
    app.add_option("--m", cfg.m, "ambient cyclotomic level for element input")
        ->capture_default_str();
    app.add_option("--m-max", cfg.m_max, "maximal cyclotomic level")->capture_default_str();
    app.add_option("--gamma", cfg.gamma_text, "generator of 1+pZ_p")->capture_default_str();

    std::string sx, sy, st, ss_, sf, sg, smu, snu, spsi, sphi, sP, sQ, smoments, sCexp = "0";
    long a_exp = 1;
    int level = 0, level2 = 0, comp_i = 0;
    long n_level = 0;
    long j_idx = 1;
    uint64_t seed = 20260811;
    bool extended = false;
    std::optional<int> opt_M, opt_D;

    // ---- padic ----
    auto* padic = app.add_subcommand("padic", "field arithmetic");
    auto* p_val = padic->add_subcommand("val", "valuation of x");
    p_val->add_option("--x", sx)->required();
    auto* p_teich = padic->add_subcommand("teichmuller", "Teichmuller lift");
    p_teich->add_option("--x", sx)->required();
    auto* p_angle = padic->add_subcommand("angle", "projection to 1+pZ_p");
    p_angle->add_option("--x", sx)->required();
    auto* p_log = padic->add_subcommand("log1p", "log_p(1+x)");
    p_log->add_option("--x", sx)->required();
    auto* p_exp = padic->add_subcommand("exp", "exp_p(x)");
    p_exp->add_option("--x", sx)->required();
    auto* p_binom = padic->add_subcommand("binom-pow", "(1+t)^s for s in Z_p");
    p_binom->add_option("--t", st)->required();
    p_binom->add_option("--s", ss_)->required();
    auto* p_aut = padic->add_subcommand("automorphism", "zeta |-> zeta^a");
    p_aut->add_option("--x", sx)->required();
    p_aut->add_option("--a", a_exp)->required();

    // ---- weight ----
    auto* weight = app.add_subcommand("weight", "weight-space points");
    auto* w_cls = weight->add_subcommand("classify", "level and torsion flag");
    w_cls->add_option("--t", st)->required();
    w_cls->add_option("--i", comp_i);
    auto* w_theta = weight->add_subcommand("theta", "canonical coordinate");
    w_theta->add_option("--t", st)->required();
    auto* w_eval = weight->add_subcommand("eval", "psi(x)");
    w_eval->add_option("--t", st)->required();
    w_eval->add_option("--i", comp_i);
    w_eval->add_option("--x", sx)->required();
    auto* w_mul = weight->add_subcommand("mul", "product of points");
    w_mul->add_option("--a", sy)->required();
    w_mul->add_option("--b", sf)->required();
    auto* w_inv = weight->add_subcommand("inverse-theta", "section of theta");
    w_inv->add_option("--x", sx)->required();
    w_inv->add_option("--n", n_level)->required();
    auto* w_tors = weight->add_subcommand("torsion", "torsion character");
    w_tors->add_option("--n", n_level)->required();
    w_tors->add_option("--j", j_idx);

    // ---- series ----
    auto* series = app.add_subcommand("series", "analytic functions on X_n");
    auto* s_norm = series->add_subcommand("norm", "sup norm");
    s_norm->add_option("--f", sf)->required();
    auto* s_mul = series->add_subcommand("mul", "product");
    s_mul->add_option("--f", sf)->required();
    s_mul->add_option("--g", sg)->required();
    auto* s_tr = series->add_subcommand("translate", "T_phi f");
    s_tr->add_option("--f", sf)->required();
    s_tr->add_option("--phi", sphi)->required();
    auto* s_ev = series->add_subcommand("eval", "point evaluation");
    s_ev->add_option("--f", sf)->required();
    s_ev->add_option("--psi", spsi)->required();
    auto* s_expth = series->add_subcommand("exp-theta", "exp_p(c theta)");
    s_expth->add_option("--c", sx)->required();
    s_expth->add_option("--level", level);
    s_expth->add_option("--D", opt_D);

    // ---- dist ----
    auto* dist = app.add_subcommand("dist", "bounded distributions");
    auto* d_from = dist->add_subcommand("from-moments", "construct and certify");
    d_from->add_option("--moments", smoments)->required();
    d_from->add_option("--level", level);
    d_from->add_option("--C-exp", sCexp);
    auto* d_dirac = dist->add_subcommand("dirac", "Dirac distribution");
    d_dirac->add_option("--psi", spsi)->required();
    d_dirac->add_option("--level", level);
    d_dirac->add_option("--M", opt_M);
    auto* d_eval = dist->add_subcommand("eval", "mu(f) with certified error");
    d_eval->add_option("--mu", smu)->required();
    d_eval->add_option("--f", sf)->required();
    auto* d_conv = dist->add_subcommand("convolve", "mu * nu");
    d_conv->add_option("--mu", smu)->required();
    d_conv->add_option("--nu", snu)->required();
    auto* d_theta = dist->add_subcommand("theta-op", "moment shift");
    d_theta->add_option("--mu", smu)->required();
    auto* d_inc = dist->add_subcommand("include", "inclusion to a higher level");
    d_inc->add_option("--mu", smu)->required();
    d_inc->add_option("--level", level2)->required();

    // ---- galois ----
    auto* galois = app.add_subcommand("galois", "Galois actions");
    auto* g_pt = galois->add_subcommand("act-point", "g . psi");
    g_pt->add_option("--g", sg)->required();
    g_pt->add_option("--psi", spsi)->required();
    auto* g_fn = galois->add_subcommand("act-series", "f^g");
    g_fn->add_option("--g", sg)->required();
    g_fn->add_option("--f", sf)->required();
    auto* g_dist = galois->add_subcommand("act-dist", "g . mu");
    g_dist->add_option("--g", sg)->required();
    g_dist->add_option("--mu", smu)->required();
    g_dist->add_flag("--extended", extended, "level-0 action of the full group");

    // ---- fourier ----
    auto* fourier_cmd = app.add_subcommand("fourier", "transform to power series");
    auto* f_fwd = fourier_cmd->add_subcommand("forward", "F_n(mu)");
    f_fwd->add_option("--mu", smu)->required();
    auto* f_inv = fourier_cmd->add_subcommand("inverse", "moments k! a_k at level m+1");
    f_inv->add_option("--P", sP)->required();
    f_inv->add_option("--M", opt_M);
    auto* f_mul = fourier_cmd->add_subcommand("multiply", "Cauchy product");
    f_mul->add_option("--P", sP)->required();
    f_mul->add_option("--Q", sQ)->required();
    auto* f_gal = fourier_cmd->add_subcommand("galois", "coefficient action and T + log chi");
    f_gal->add_option("--g", sg)->required();
    f_gal->add_option("--P", sP)->required();
    auto* f_der = fourier_cmd->add_subcommand("derive", "d/dT");
    f_der->add_option("--P", sP)->required();

    // ---- selftest ----
    auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    selftest->add_option("--seed", seed)->capture_default_str();

    // global config options may appear anywhere on the line
    auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
        for (auto* sc : a->get_subcommands({})) {
            sc->fallthrough();
            self(sc, self);
        }
    };
    enable_fallthrough(&app, enable_fallthrough);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        cfg.field().validate();
        if (*p_val) {
            Valuation v = val(arg_element(cfg, sx));
            json r;
            if (v.exact)
                r["val"] = rat_to_string(v.value);
            else
                r["val_at_least"] = rat_to_string(v.value);
            emit(result_envelope(cfg, r, nullptr));
        } else if (*p_teich) {
            emit(element_result(cfg, teichmuller(arg_element(cfg, sx))));
        } else if (*p_angle) {
            emit(element_result(cfg, angle(arg_element(cfg, sx))));
        } else if (*p_log) {
            emit(element_result(cfg, log1p(arg_element(cfg, sx))));
        } else if (*p_exp) {
            emit(element_result(cfg, exp(arg_element(cfg, sx))));
        } else if (*p_binom) {
            FieldDesc qp{cfg.p, 0, cfg.N};
            PadicElement s_elt = element_from_any(qp, arg_json(ss_));
            emit(element_result(cfg, binom_pow(arg_element(cfg, st), s_elt)));
        } else if (*p_aut) {
            emit(element_result(cfg, ext_automorphism(arg_element(cfg, sx), a_exp)));
        } else if (*w_cls) {
            WeightPoint psi(comp_i, arg_element(cfg, st), cfg.gamma());
            Classification c = classify(psi);
            json r;
            r["level"] = c.level;
            r["torsion"] = c.torsion;
            emit(result_envelope(cfg, r, nullptr));
        } else if (*w_theta) {
            WeightPoint psi(0, arg_element(cfg, st), cfg.gamma());
            emit(element_result(cfg, theta(psi)));
        } else if (*w_eval) {
            WeightPoint psi(comp_i, arg_element(cfg, st), cfg.gamma());
            FieldDesc qp{cfg.p, 0, cfg.N};
            emit(element_result(cfg, eval_char(psi, element_from_any(qp, arg_json(sx)))));
        } else if (*w_mul) {
            WeightPoint a = arg_point(cfg, sy), b = arg_point(cfg, sf);
            emit(result_envelope(cfg, to_json(mul_points(a, b)), nullptr));
        } else if (*w_inv) {
            WeightPoint psi =
                inverse_theta(arg_element(cfg, sx), static_cast<int>(n_level), cfg.gamma());
            emit(result_envelope(cfg, to_json(psi), nullptr));
        } else if (*w_tors) {
            FieldDesc f{cfg.p, std::max(static_cast<int>(n_level), cfg.m), cfg.N};
            emit(result_envelope(cfg, to_json(torsion_char(f, static_cast<int>(n_level), j_idx)),
                                 nullptr));
        } else if (*s_norm) {
            TateSeries f = tate_series_from_json(arg_json(sf));
            json r;
            r["sup_norm_exp"] = magnitude_to_json(sup_norm(f));
            emit(result_envelope(cfg, r, nullptr));
        } else if (*s_mul) {
            TateSeries f = tate_series_from_json(arg_json(sf));
            TateSeries g = tate_series_from_json(arg_json(sg));
            TateSeries h = mul(f, g);
            emit(result_envelope(cfg, to_json(h), magnitude_to_json(h.tail_bound())));
        } else if (*s_tr) {
            TateSeries f = tate_series_from_json(arg_json(sf));
            TateSeries h = translate(f, arg_quotient(cfg, sphi));
            emit(result_envelope(cfg, to_json(h), magnitude_to_json(h.tail_bound())));
        } else if (*s_ev) {
            TateSeries f = tate_series_from_json(arg_json(sf));
            EvalResult r = evaluate(f, arg_quotient(cfg, spsi));
            emit(result_envelope(cfg, to_json(r.value), magnitude_to_json(r.error)));
        } else if (*s_expth) {
            TateSeries E = exp_theta_series(arg_element(cfg, sx), level, opt_D.value_or(cfg.D));
            emit(result_envelope(cfg, to_json(E), magnitude_to_json(E.tail_bound())));
        } else if (*d_from) {
            json jm = arg_json(smoments);
            std::vector<PadicElement> ms;
            for (const auto& x : jm) ms.push_back(element_from_any(cfg.field(), x));
            Magnitude C = Magnitude::pow_p(rat_from_string(sCexp));
            BoundedDistribution mu = from_moments(std::move(ms), level, C);
            emit(result_envelope(cfg, to_json(mu), nullptr));
        } else if (*d_dirac) {
            WeightPoint psi = arg_point(cfg, spsi);
            BoundedDistribution mu = dirac(psi, level, opt_M.value_or(cfg.M));
            emit(result_envelope(cfg, to_json(mu), nullptr));
        } else if (*d_eval) {
            BoundedDistribution mu = distribution_from_json(arg_json(smu));
            TateSeries f = tate_series_from_json(arg_json(sf));
            EvalResult r = eval(mu, f);
            emit(result_envelope(cfg, to_json(r.value), magnitude_to_json(r.error)));
        } else if (*d_conv) {
            BoundedDistribution mu = distribution_from_json(arg_json(smu));
            BoundedDistribution nu = distribution_from_json(arg_json(snu));
            emit(result_envelope(cfg, to_json(convolve(mu, nu)), nullptr));
        } else if (*d_theta) {
            BoundedDistribution mu = distribution_from_json(arg_json(smu));
            emit(result_envelope(cfg, to_json(theta_op(mu)), nullptr));
        } else if (*d_inc) {
            BoundedDistribution mu = distribution_from_json(arg_json(smu));
            emit(result_envelope(cfg, to_json(include_level(mu, level2)), nullptr));
        } else if (*g_pt) {
            GaloisElement g = galois_from_json(arg_json(sg));
            emit(result_envelope(cfg, to_json(act_on_point(g, arg_point(cfg, spsi))), nullptr));
        } else if (*g_fn) {
            GaloisElement g = galois_from_json(arg_json(sg));
            TateSeries f = tate_series_from_json(arg_json(sf));
            emit(result_envelope(cfg, to_json(act_on_function(g, f)), nullptr));
        } else if (*g_dist) {
            GaloisElement g = galois_from_json(arg_json(sg));
            BoundedDistribution mu = distribution_from_json(arg_json(smu));
            BoundedDistribution out =
                extended ? act_level0_full(g, mu) : act_on_distribution(g, mu);
            emit(result_envelope(cfg, to_json(out), nullptr));
        } else if (*f_fwd) {
            BoundedDistribution mu = distribution_from_json(arg_json(smu));
            BSenElement P = fourier(mu);
            emit(result_envelope(cfg, to_json(P), magnitude_to_json(P.bound())));
        } else if (*f_inv) {
            BSenElement P = bsen_from_json(arg_json(sP));
            emit(result_envelope(cfg, to_json(inverse_fourier(P, opt_M.value_or(cfg.M))),
                                 nullptr));
        } else if (*f_mul) {
            BSenElement P = bsen_from_json(arg_json(sP));
            BSenElement Q = bsen_from_json(arg_json(sQ));
            emit(result_envelope(cfg, to_json(multiply(P, Q)), nullptr));
        } else if (*f_gal) {
            GaloisElement g = galois_from_json(arg_json(sg));
            BSenElement P = bsen_from_json(arg_json(sP));
            emit(result_envelope(cfg, to_json(colmez_action(g, P)), nullptr));
        } else if (*f_der) {
            BSenElement P = bsen_from_json(arg_json(sP));
            emit(result_envelope(cfg, to_json(derivative(P)), nullptr));
        } else if (*selftest) {
            auto rs = run_acceptance(seed);
            bool ok = print_acceptance_table(std::cout, rs);
            return ok ? 0 : 1;
        }
        return 0;
    } catch (const precondition_error& e) {
        json err;
        err["config"] = cfg.to_json_obj();
        err["error"] = e.code();
        err["message"] = e.what();
        std::cout << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "PARSE";
        err["message"] = e.what();
        std::cout << err.dump() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
