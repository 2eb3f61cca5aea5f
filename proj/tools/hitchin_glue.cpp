// Command-line driver: model-check, wolf-validate, poisson-solve, build-approx, spectrum, glue.

#include "hitchin_glue/corrector.hpp"
#include "hitchin_glue/errors.hpp"
#include "hitchin_glue/field_io.hpp"
#include "hitchin_glue/gauge.hpp"
#include "hitchin_glue/linear.hpp"
#include "hitchin_glue/report.hpp"
#include "hitchin_glue/studies.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hg;

enum Exit { ok = 0, fail_flag = 1, config_error = 2, numeric_failure = 3 };

struct Common {
    unsigned long long seed = 0;
    std::string out;
    std::string format = "json";
    bool strict = false;
};

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + format_double(v[k]);
    return s;
}

void write_rows(const std::vector<ReportRow>& rows, const Common& c) {
    ReportFormat f = report_format_from_name(c.format);
    if (c.out.empty())
        std::cout << format_report(rows, f);
    else
        emit_report(rows, f, c.out);
}

int finish(const std::vector<ReportRow>& rows, const Common& c, bool pass) {
    write_rows(rows, c);
    if (!pass) std::cerr << "FAIL flags raised\n";
    return c.strict && !pass ? fail_flag : ok;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("cannot parse '" + item + "' as a number");
        }
    }
    return v;
}

// Flat JSON config keys become flags placed right after the subcommand, so explicit flags
// (which come later) win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw InvalidArgument("--config needs a file name");
    std::string path = *(it + 1);
    args.erase(it, it + 2);
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot open config file " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config file must hold a flat JSON object");
    std::vector<std::string> extra;
    for (auto& [key, v] : j.items()) {
        std::string flag = "--" + key;
        if (v.is_boolean()) {
            if (v.get<bool>()) extra.push_back(flag);
        } else if (v.is_array()) {
            std::string s;
            for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + (v[k].is_string() ? v[k].get<std::string>() : v[k].dump());
            extra.push_back(flag);
            extra.push_back(s);
        } else {
            extra.push_back(flag);
            extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    // insert after the subcommand (first positional token)
    std::size_t pos = 1;
    while (pos < args.size() && !args[pos].empty() && args[pos][0] == '-') ++pos;
    pos = std::min(pos + 1, args.size());
    args.insert(args.begin() + long(pos), extra.begin(), extra.end());
    return args;
}

void add_common(CLI::App* sc, Common& c) {
    sc->add_option("--seed", c.seed, "Random seed (default 0)");
    sc->add_option("--out", c.out, "Output file (stdout when omitted); a directory for glue");
    sc->add_option("--format", c.format, "Report format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_flag("--strict", c.strict, "Exit with status 1 when a FAIL flag is raised");
}

void write_pair(const NeckPair& p, const std::string& dir) {
    std::filesystem::create_directories(dir);
    PairFields f = to_fields(p);
    write_field_json(f.A_dtau, dir + "/connection_dtau.json");
    write_field_json(f.A_dtheta, dir + "/connection_dtheta.json");
    write_field_json(f.Phi_dz_over_z, dir + "/higgs_dz_over_z.json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gluing solutions of the self-duality equations along a neck"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_help_all_flag("--help-all", "Help for every subcommand");
    app.footer("Global: --config FILE.json supplies flags as flat keys; HITCHIN_GLUE_THREADS caps threads.\n"
               "Exit status: 0 ok, 1 FAIL flags with --strict, 2 configuration error, 3 numeric failure.");

    Common common;

    // model-check
    double mc_alpha = 0.2, mc_cre = 1.0, mc_cim = 0.0, mc_T = 4.0;
    int mc_n = 129, mc_modes = 4;
    auto* mc = app.add_subcommand("model-check", "Residuals of the model pair and seam continuity of the glued model");
    add_common(mc, common);
    mc->add_option("--alpha", mc_alpha, "Model alpha");
    mc->add_option("--C-re", mc_cre, "Real part of C");
    mc->add_option("--C-im", mc_cim, "Imaginary part of C");
    mc->add_option("--T", mc_T, "Half length of the neck")->check(CLI::PositiveNumber);
    mc->add_option("--n-tau", mc_n, "Tau nodes")->check(CLI::Range(5, 100000));
    mc->add_option("--modes", mc_modes, "Theta modes N (2N+1 nodes)")->check(CLI::Range(1, 256));

    // wolf-validate
    double wv_ell = 0.5;
    std::string wv_grids = "161,321,641";
    int wv_modes = 4;
    auto* wv = app.add_subcommand("wolf-validate", "Grid refinement of the exact Wolf pair and its model limit");
    add_common(wv, common);
    wv->add_option("--ell", wv_ell, "Wolf exponent in (0, 1)")->check(CLI::Range(1e-6, 1.0 - 1e-6));
    wv->add_option("--grids", wv_grids, "Comma-separated tau node counts");
    wv->add_option("--modes", wv_modes, "Theta modes N")->check(CLI::Range(1, 256));

    // poisson-solve
    int ps_jmax = 12, ps_samples = 100, ps_n = 2000;
    double ps_d = 0.5, ps_dp = 0.45, ps_ddp = 0.35, ps_rmin = 1e-6;
    std::string ps_input, ps_output;
    auto* ps = app.add_subcommand("poisson-solve", "Kernel-bound study of the mode solutions, or solve a given field");
    add_common(ps, common);
    ps->add_option("--j-max", ps_jmax, "Largest mode of the kernel study")->check(CLI::Range(1, 1000));
    ps->add_option("--samples", ps_samples, "Random right-hand sides per mode")->check(CLI::Range(1, 100000));
    ps->add_option("--nodes", ps_n, "Radial nodes")->check(CLI::Range(16, 10000000));
    ps->add_option("--r-min", ps_rmin, "Inner radius")->check(CLI::Range(1e-300, 0.5));
    ps->add_option("--delta", ps_d, "Weight delta");
    ps->add_option("--delta-prime", ps_dp, "Weight delta'");
    ps->add_option("--delta-dprime", ps_ddp, "Weight delta''");
    ps->add_option("--input", ps_input, "scalar_function field (JSON) to solve for instead of the study");
    ps->add_option("--solution", ps_output, "Where to write the solution field (JSON)");

    // build-approx
    std::string ba_R = "0.4,0.2,0.1,0.05", ba_fixture = "wolf", ba_fields;
    double ba_delta = 0.5, ba_dp = 0.45, ba_ddp = 0.35;
    int ba_samples = 4001, ba_n = 201, ba_modes = 4;
    auto* ba = app.add_subcommand("build-approx", "Cut-off approximate solution and its error decay in R");
    add_common(ba, common);
    ba->add_option("--R", ba_R, "Comma-separated cutoff radii in (0, 1)");
    ba->add_option("--delta", ba_delta, "Decay exponent of the fixture (Wolf ell)")->check(CLI::Range(1e-6, 1.0 - 1e-6));
    ba->add_option("--delta-prime", ba_dp, "Weight delta'");
    ba->add_option("--delta-dprime", ba_ddp, "Weight delta''");
    ba->add_option("--fixture", ba_fixture, "Exact input: wolf")->check(CLI::IsMember({"wolf"}));
    ba->add_option("--samples", ba_samples, "Tau samples for the sup norm")->check(CLI::Range(3, 10000000));
    ba->add_option("--n-tau", ba_n, "Tau nodes of the written fields")->check(CLI::Range(5, 100000));
    ba->add_option("--modes", ba_modes, "Theta modes N of the written fields")->check(CLI::Range(1, 256));
    ba->add_option("--fields", ba_fields, "Directory for the sampled pair of the last R");

    // spectrum
    std::string sp_sweep = "0.01,0.00316,0.001,0.000316,0.0001", sp_bg = "model";
    int sp_n = 161, sp_modes = 4, sp_eigen = 1;
    double sp_tol = 1e-8, sp_alpha = 0.2, sp_cre = 1.0, sp_cim = 0.0, sp_ell = 0.5, sp_cap = 2.0;
    bool sp_dirac = false;
    auto* sp = app.add_subcommand("spectrum", "Smallest eigenvalue of L over a sweep in R");
    add_common(sp, common);
    sp->add_option("--sweep", sp_sweep, "Comma-separated values of R");
    sp->add_option("--background", sp_bg, "model, wolf or approx")->check(CLI::IsMember({"model", "wolf", "approx"}));
    sp->add_option("--n-tau", sp_n, "Tau nodes")->check(CLI::Range(5, 100000));
    sp->add_option("--modes", sp_modes, "Theta modes N")->check(CLI::Range(0, 256));
    sp->add_option("--n-eigen", sp_eigen, "Eigenvalues per R")->check(CLI::Range(1, 64));
    sp->add_option("--tol", sp_tol, "Relative eigenvalue tolerance")->check(CLI::Range(1e-15, 1e-2));
    sp->add_option("--alpha", sp_alpha, "Model alpha");
    sp->add_option("--C-re", sp_cre, "Real part of C");
    sp->add_option("--C-im", sp_cim, "Imaginary part of C");
    sp->add_option("--ell", sp_ell, "Wolf exponent for the wolf/approx backgrounds");
    sp->add_option("--cap-length", sp_cap, "Cap length L added at both ends")->check(CLI::PositiveNumber);
    sp->add_flag("--with-dirac", sp_dirac, "Also compute the smallest singular value of the Dirac-type operator");

    // glue
    double gl_R = 0.1, gl_ell = 0.5, gl_C = 0.0;
    std::string gl_fixture = "wolf";
    int gl_n = 121, gl_modes = 4, gl_iter = 50;
    double gl_tol = 1e-10;
    auto* gl = app.add_subcommand("glue", "Approximate solution followed by the fixed-point corrector");
    add_common(gl, common);
    gl->add_option("--R", gl_R, "Cutoff radius in (0, 1)");
    gl->add_option("--fixture", gl_fixture, "Exact input: wolf or model")->check(CLI::IsMember({"wolf", "model"}));
    gl->add_option("--ell", gl_ell, "Wolf exponent")->check(CLI::Range(1e-6, 1.0 - 1e-6));
    gl->add_option("--n-tau", gl_n, "Tau nodes")->check(CLI::Range(5, 100000));
    gl->add_option("--modes", gl_modes, "Theta modes N")->check(CLI::Range(0, 256));
    gl->add_option("--max-iter", gl_iter, "Iteration cap")->check(CLI::Range(1, 100000));
    gl->add_option("--tol", gl_tol, "Residual target")->check(CLI::PositiveNumber);
    gl->add_option("--C", gl_C, "Contraction constant in sigma_R (0: measure)");

    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(args);
        std::vector<const char*> cargs;
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(int(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return config_error;
    }

    try {
        if (*mc) {
            ModelParams p(mc_alpha, cd(mc_cre, mc_cim));
            NeckGrid g(-mc_T, mc_T, mc_n, mc_modes);
            ModelCheck r = model_check(p, g);
            ReportRow row;
            row.set("alpha", mc_alpha).set("C_re", mc_cre).set("C_im", mc_cim).set("T", mc_T);
            row.set("n_tau", mc_n).set("modes", mc_modes);
            row.set("first_residual", r.first_residual).set("second_residual", r.second_residual);
            row.set("seam_jump", r.seam_jump);
            bool pass = r.first_residual <= 1e-12 && r.second_residual <= 1e-12 && r.seam_jump <= 1e-12;
            row.set("pass", pass);
            return finish({row}, common, pass);
        }
        if (*wv) {
            std::vector<int> grids;
            for (double v : parse_list(wv_grids)) grids.push_back(int(v));
            if (grids.size() < 2) throw InvalidArgument("--grids needs at least two node counts");
            WolfStudy s = wolf_study(wv_ell, grids, wv_modes);
            ReportRow row;
            row.set("ell", wv_ell).set("modes", wv_modes);
            double worst = 0.0;
            for (std::size_t k = 0; k < grids.size(); ++k) {
                row.set("residual_n" + std::to_string(grids[k]), s.first_residual[k]);
                row.set("second_residual_n" + std::to_string(grids[k]), s.second_residual[k]);
            }
            worst = s.first_residual.back();
            row.set("max_residual", worst);
            row.set("refinement_slopes", join(s.order));
            row.set("higgs_slope", s.higgs_slope);
            bool pass = s.order.back() >= 1.9 && std::abs(s.higgs_slope - wv_ell) <= 0.15 * wv_ell;
            row.set("pass", pass);
            return finish({row}, common, pass);
        }
        if (*ps) {
            WeightConfig w(ps_d, ps_dp, ps_ddp);
            if (!ps_input.empty()) {
                Field2D h = read_field_json(ps_input);
                PoissonReport rep;
                Field2D u = solve_poisson_disk(h, w, &rep);
                if (!ps_output.empty()) write_field_json(u, ps_output);
                std::vector<ReportRow> rows;
                for (std::size_t k = 0; k < rep.modes.size(); ++k) {
                    ReportRow r;
                    r.set("j", rep.modes[k]).set("residual", rep.residual[k]).set("ratio", rep.ratio[k]);
                    rows.push_back(r);
                }
                return finish(rows, common, rep.max_residual <= 1e-7);
            }
            KernelStudy s = poisson_kernel_study(ps_jmax, ps_samples, w, ps_n, ps_rmin, common.seed);
            std::vector<ReportRow> rows;
            bool pass = true;
            for (std::size_t k = 0; k < s.j.size(); ++k) {
                bool ok_j = s.max_ratio[k] <= s.bound[k] && s.max_residual[k] <= 1e-7;
                pass = pass && ok_j;
                ReportRow r;
                r.set("j", s.j[k]).set("max_ratio", s.max_ratio[k]).set("bound", s.bound[k]);
                r.set("max_residual", s.max_residual[k]).set("samples", ps_samples).set("nodes", ps_n);
                r.set("r_min", ps_rmin).set("pass", ok_j);
                rows.push_back(r);
            }
            return finish(rows, common, pass);
        }
        if (*ba) {
            std::vector<double> Rs = parse_list(ba_R);
            if (Rs.empty()) throw InvalidArgument("--R needs at least one value");
            WeightConfig w(ba_delta, ba_dp, ba_ddp);
            auto [plus, minus] = wolf_fixture(ba_delta);
            std::vector<ReportRow> rows;
            std::vector<double> done_R, done_sup;
            bool pass = true;
            for (double R : Rs) {
                PlumbingConfig cfg = PlumbingConfig::from_R(R, ba_n, ba_modes);
                ApproximatePair a(plus, minus, cfg, w);
                ErrorReport e = hitchin_error(a, ba_samples);
                done_R.push_back(R);
                done_sup.push_back(e.sup);
                ReportRow r;
                r.set("R", R).set("fixture", ba_fixture).set("delta", ba_delta).set("delta_dprime", ba_ddp);
                r.set("samples", ba_samples).set("sup_residual", e.sup).set("sup_outside_annuli", e.sup_outside);
                r.set("tau_at_sup", e.tau_at_sup);
                r.set("slope_so_far", done_R.size() >= 2 ? fit_loglog_slope(done_R, done_sup)
                                                         : std::numeric_limits<double>::quiet_NaN());
                pass = pass && e.sup_outside <= 1e-10;
                rows.push_back(r);
                if (!ba_fields.empty() && R == Rs.back()) write_pair(sample_radial(a.as_radial(), plumbed_grid(cfg)), ba_fields);
            }
            if (done_R.size() >= 2) {
                double slope = fit_loglog_slope(done_R, done_sup);
                pass = pass && std::abs(slope - ba_ddp) <= 0.2 * ba_ddp;
            }
            return finish(rows, common, pass);
        }
        if (*sp) {
            std::vector<double> Rs = parse_list(sp_sweep);
            validate_sweep(Rs);
            Background bg = background_from_name(sp_bg);
            ModelParams mp(sp_alpha, cd(sp_cre, sp_cim));
            SpectrumOptions opt;
            opt.tol = sp_tol;
            opt.seed = common.seed;
            opt.with_dirac = sp_dirac;
            opt.n_eigen = sp_eigen;
            SpectrumReport rep = scaling_study(
                Rs, [&](double R) { return make_background(bg, R, sp_n, sp_modes, sp_cap, mp, sp_ell); }, opt);
            std::vector<ReportRow> rows;
            for (std::size_t k = 0; k < Rs.size(); ++k) {
                ReportRow r;
                r.set("R", rep.R[k]).set("T", rep.T[k]).set("background", sp_bg).set("n_tau", sp_n);
                r.set("modes", sp_modes).set("cap_length", sp_cap);
                r.set("lambda1", rep.lambda1[k]).set("lambda1_T2", rep.lambda1_T2[k]).set("M_R", rep.M_R[k]);
                for (std::size_t e = 1; e < rep.lowest[k].size(); ++e)
                    r.set("lambda" + std::to_string(e + 1), rep.lowest[k][e]);
                if (sp_dirac) r.set("sigma_min", rep.sigma_min[k]).set("sigma_min_T", rep.sigma_min_T[k]);
                r.set("flatness", rep.flatness).set("flat_pass", rep.flat_pass);
                r.set("small_eigenvalue_flag", rep.small_eigenvalue_flag).set("sweep_adequate", rep.sweep_adequate);
                rows.push_back(r);
            }
            return finish(rows, common, rep.flat_pass && !rep.small_eigenvalue_flag);
        }
        if (*gl) {
            NeckPair app_pair;
            PlumbingConfig cfg = PlumbingConfig::from_R(gl_R, gl_n, gl_modes);
            if (gl_fixture == "wolf") {
                auto [plus, minus] = wolf_fixture(gl_ell);
                ApproximatePair a(plus, minus, cfg, fixture_weights(gl_ell));
                app_pair = sample_radial(a.as_radial(), plumbed_grid(cfg));
            } else {
                app_pair = sample_model(ModelParams(0.2, cd(1.0, 0.0)), neck_grid(cfg));
            }
            CorrectorOptions opt;
            opt.tol = gl_tol;
            opt.max_iter = gl_iter;
            opt.C = gl_C;
            opt.seed = common.seed;
            CorrectorResult res = correct(app_pair, gl_R, opt);
            const CorrectorState& st = res.state;
            ReportRow r;
            r.set("R", gl_R).set("fixture", gl_fixture).set("n_tau", gl_n).set("modes", gl_modes);
            r.set("residual_before", res.residual_before).set("residual_after", res.residual_after);
            r.set("iterations", st.iterations).set("contraction_factors", join(st.contraction_factors));
            r.set("sigma_R", st.sigma_R).set("gamma_norm", st.gamma_norm).set("C_G", st.C_G).set("C_Q", st.C_Q);
            r.set("converged", st.converged).set("contracting", st.contracting).set("in_ball", st.in_ball);
            Common c = common;
            if (!common.out.empty()) {
                std::filesystem::create_directories(common.out);
                write_pair(res.pair, common.out + "/fields");
                c.out = common.out + "/glue." + common.format;
            }
            return finish({r}, c, st.converged && st.contracting && st.in_ball);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.is_config_error() ? config_error : numeric_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric_failure;
    }
    return ok;
}
