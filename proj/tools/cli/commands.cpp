#include "cli/commands.hpp"

#include "bpskink/analysis.hpp"
#include "bpskink/closed_form.hpp"
#include "bpskink/errors.hpp"
#include "cli/table_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace bpskink::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Where data and human-readable notes go.
class Destination {
public:
    Destination(const RunConfig& cfg, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
        std::optional<std::filesystem::path> path = cfg.output_path;
        if (!path) {
            if (const char* dir = std::getenv("BPSKINK_OUTPUT_DIR"); dir && *dir) {
                path = std::filesystem::path(dir) /
                       (std::string(to_string(cfg.command)) + "." + extension(cfg.format));
            }
        }
        if (path) {
            file_ = std::make_unique<std::ofstream>(*path, std::ios::binary | std::ios::trunc);
            if (!*file_) {
                error_ = "cannot open output file " + path->string();
            }
        }
    }

    bool ok() const noexcept { return error_.empty(); }
    const std::string& error() const noexcept { return error_; }
    std::ostream& data() { return file_ ? static_cast<std::ostream&>(*file_) : out_; }
    std::ostream& notes() { return file_ ? out_ : err_; }

private:
    std::ostream& out_;
    std::ostream& err_;
    std::unique_ptr<std::ofstream> file_;
    std::string error_;
};

struct NamedProfile {
    Method method;
    KinkProfile profile;
};

std::vector<Method> expand(Method m) {
    if (m == Method::all) {
        return {Method::closed_form, Method::ode, Method::bvp};
    }
    return {m};
}

Provenance provenance_of(Method m) {
    switch (m) {
        case Method::ode:
            return Provenance::ode_first_order;
        case Method::bvp:
            return Provenance::bvp_second_order;
        default:
            return Provenance::closed_form;
    }
}

std::vector<NamedProfile> build_profiles(const RunConfig& cfg, const ModelParams& p) {
    const Grid grid = default_grid(p, cfg.x0, cfg.solver, cfg.points);
    std::vector<NamedProfile> out;
    for (const Method m : expand(cfg.method)) {
        if (cfg.branch_m == cfg.branch_n) {
            out.push_back({m, vacuum_profile(p, cfg.branch_m, grid, provenance_of(m))});
            continue;
        }
        const BranchMapping b = branch_map(cfg.branch_m, cfg.branch_n);
        switch (m) {
            case Method::closed_form:
                out.push_back(
                    {m, closed_form_profile(ImplicitSolution::for_branch(p, cfg.x0, cfg.branch_m,
                                                                         cfg.branch_n),
                                            grid)});
                break;
            case Method::ode:
                out.push_back(
                    {m, integrate_bps(p, cfg.x0, b.sign, cfg.solver, grid, b.vacuum_base)});
                break;
            case Method::bvp:
                out.push_back({m, solve_second_order_bvp(p, cfg.solver, grid, cfg.branch_m,
                                                         cfg.branch_n)});
                break;
            case Method::all:
                break;
        }
    }
    return out;
}

struct PairDistance {
    std::string a;
    std::string b;
    double value;
};

std::vector<PairDistance> pairwise(const std::vector<NamedProfile>& profiles) {
    std::vector<PairDistance> out;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        for (std::size_t j = i + 1; j < profiles.size(); ++j) {
            out.push_back({to_string(profiles[i].method), to_string(profiles[j].method),
                           sup_distance(profiles[i].profile, profiles[j].profile)});
        }
    }
    return out;
}

Json params_json(const RunConfig& cfg, const ModelParams& p) {
    Json j;
    j["lambda"] = p.lambda();
    j["L"] = p.big_l();
    j["kappa"] = p.kappa();
    j["x0"] = cfg.x0;
    j["branch"] = {cfg.branch_m, cfg.branch_n};
    return j;
}

Json solver_json(const SolverConfig& s) {
    Json j;
    j["rel_tol"] = s.rel_tol;
    j["abs_tol"] = s.abs_tol;
    j["max_steps"] = s.max_steps;
    j["tail_cut"] = s.tail_cut;
    return j;
}

// Per-sample columns in the requested unit convention.
struct ProfileRow {
    double x, alpha, dalpha, energy_density, charge_density, bps_residual;
};

ProfileRow make_row(const KinkProfile& prof, std::size_t i, bool rescaled) {
    const PointState s = prof.at(i);
    const ModelParams& p = prof.params;
    ProfileRow r{prof.grid[i],
                 s.alpha,
                 s.dalpha,
                 energy_density(s, p),
                 charge_density(s, p),
                 bps_residual(s, prof.sign, p)};
    if (rescaled) {
        const double l = p.big_l();
        r.x /= l;
        r.dalpha *= l;
        r.energy_density *= l * l;
        r.charge_density *= l * l;
        r.bps_residual *= l;
    }
    return r;
}

int cmd_solve(const RunConfig& cfg, Destination& dest) {
    const ModelParams p(cfg.lambda, cfg.big_l);
    const std::vector<NamedProfile> profiles = build_profiles(cfg, p);
    const std::vector<PairDistance> dists = pairwise(profiles);
    double worst = 0.0;
    for (const auto& d : dists) {
        worst = std::max(worst, d.value);
    }

    if (cfg.format == OutputFormat::csv) {
        Table t;
        t.header = {"method", "x", "alpha", "dalpha", "energy_density", "charge_density",
                    "bps_residual"};
        for (const auto& np : profiles) {
            for (std::size_t i = 0; i < np.profile.size(); ++i) {
                const ProfileRow r = make_row(np.profile, i, cfg.rescaled);
                t.add_row({to_string(np.method), format_real(r.x), format_real(r.alpha),
                           format_real(r.dalpha), format_real(r.energy_density),
                           format_real(r.charge_density), format_real(r.bps_residual)});
            }
        }
        write_csv(dest.data(), t);
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "solve";
        j["units"] = cfg.rescaled ? "rescaled" : "original";
        j["params"] = params_json(cfg, p);
        j["solver"] = solver_json(cfg.solver);
        Json arr = Json::array();
        for (const auto& np : profiles) {
            Json pj;
            pj["method"] = to_string(np.method);
            pj["sign"] = to_string(np.profile.sign);
            pj["vacuum_base"] = np.profile.vacuum_base;
            pj["trivial"] = np.profile.trivial;
            Json cols;
            std::vector<double> x, a, da, ed, cd, res;
            for (std::size_t i = 0; i < np.profile.size(); ++i) {
                const ProfileRow r = make_row(np.profile, i, cfg.rescaled);
                x.push_back(r.x);
                a.push_back(r.alpha);
                da.push_back(r.dalpha);
                ed.push_back(r.energy_density);
                cd.push_back(r.charge_density);
                res.push_back(r.bps_residual);
            }
            cols["x"] = x;
            cols["alpha"] = a;
            cols["dalpha"] = da;
            cols["energy_density"] = ed;
            cols["charge_density"] = cd;
            cols["bps_residual"] = res;
            pj["columns"] = std::move(cols);
            arr.push_back(std::move(pj));
        }
        j["profiles"] = std::move(arr);
        Json summary;
        Json pairs = Json::array();
        for (const auto& d : dists) {
            pairs.push_back({{"a", d.a}, {"b", d.b}, {"sup", d.value}});
        }
        summary["pairwise_sup"] = std::move(pairs);
        summary["max_pairwise_sup"] = worst;
        j["summary"] = std::move(summary);
        dest.data() << j.dump(2) << '\n';
    }

    auto& notes = dest.notes();
    notes << "summary: " << profiles.size() << " profile(s), " << profiles.front().profile.size()
          << " points each\n";
    for (const auto& d : dists) {
        notes << "  sup |" << d.a << " - " << d.b << "| = " << format_real(d.value) << '\n';
    }
    if (!dists.empty()) {
        notes << "  max pairwise sup = " << format_real(worst) << '\n';
    }
    return kSuccess;
}

struct CheckItem {
    std::string name;
    double value;
    std::optional<double> threshold;
    std::optional<bool> pass;  // empty for informational values
};

int cmd_verify(const RunConfig& cfg, Destination& dest) {
    const VerifyThresholds th;
    const ModelParams p(cfg.lambda, cfg.big_l);
    const std::vector<NamedProfile> profiles = build_profiles(cfg, p);
    std::vector<CheckItem> items;
    const auto info = [&](const std::string& name, double v) {
        items.push_back({name, v, std::nullopt, std::nullopt});
    };
    const auto check = [&](const std::string& name, double v, double limit) {
        items.push_back({name, v, limit, std::abs(v) <= limit});
    };

    Json reports = Json::array();
    for (const auto& np : profiles) {
        const std::string m = to_string(np.method);
        const KinkProfile& prof = np.profile;
        const EnergyChargeReport r = energy_charge_report(prof, cfg.solver);
        const DiagnosticsReport d = equivalence_diagnostics(prof);

        info(m + ".energy", r.energy);
        info(m + ".charge_quadrature", r.charge_quadrature);
        info(m + ".charge_closed_form", r.charge_closed_form);
        info(m + ".tail_bound", r.tail_bound);
        check(m + ".bps_defect", r.bps_defect, th.bps_defect);
        const double qdiff = std::abs(r.charge_quadrature - r.charge_closed_form);
        check(m + ".charge_cross_check",
              r.charge_closed_form == 0.0 ? qdiff : qdiff / std::abs(r.charge_closed_form),
              th.charge_relative);
        check(m + ".max_bps_residual", d.max_bps_residual,
              np.method == Method::bvp ? th.bps_residual_bvp : th.bps_residual);
        check(m + ".max_second_order_residual", d.max_second_order_residual,
              th.second_order_residual);
        check(m + ".pp_product_max_abs", d.pp_product_max_abs, th.pp_product);
        info(m + ".pp_product_variation", d.pp_product_variation);
        info(m + ".endpoint_p_plus", d.endpoint_p_values.first);
        info(m + ".endpoint_p_minus", d.endpoint_p_values.second);
        info(m + ".max_abs_p_plus", d.max_abs_p_plus);
        info(m + ".max_abs_p_minus", d.max_abs_p_minus);
        if (!prof.trivial) {
            const bool plus_small = d.max_abs_p_plus < th.single_branch;
            const bool minus_small = d.max_abs_p_minus < th.single_branch;
            items.push_back({m + ".single_branch", std::min(d.max_abs_p_plus, d.max_abs_p_minus),
                             th.single_branch, plus_small != minus_small});
        }

        Json rj;
        rj["method"] = m;
        rj["energy_charge"] = {{"energy", r.energy},
                               {"charge_quadrature", r.charge_quadrature},
                               {"charge_closed_form", r.charge_closed_form},
                               {"bps_defect", r.bps_defect},
                               {"tail_bound", r.tail_bound}};
        rj["diagnostics"] = {{"max_bps_residual", d.max_bps_residual},
                             {"max_second_order_residual", d.max_second_order_residual},
                             {"pp_product_max_abs", d.pp_product_max_abs},
                             {"pp_product_variation", d.pp_product_variation},
                             {"endpoint_p_values",
                              {d.endpoint_p_values.first, d.endpoint_p_values.second}},
                             {"max_abs_p_plus", d.max_abs_p_plus},
                             {"max_abs_p_minus", d.max_abs_p_minus}};
        reports.push_back(std::move(rj));
    }
    for (const auto& d : pairwise(profiles)) {
        check("sup." + d.a + "-" + d.b, d.value, th.pairwise_sup);
    }

    const bool all_pass = std::all_of(items.begin(), items.end(),
                                      [](const CheckItem& c) { return c.pass.value_or(true); });

    if (cfg.format == OutputFormat::csv) {
        Table t;
        t.header = {"item", "value", "threshold", "status"};
        for (const auto& c : items) {
            t.add_row({c.name, format_real(c.value),
                       c.threshold ? format_real(*c.threshold) : std::string(),
                       !c.pass ? "info" : (*c.pass ? "pass" : "fail")});
        }
        write_csv(dest.data(), t);
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "verify";
        j["params"] = params_json(cfg, p);
        j["solver"] = solver_json(cfg.solver);
        j["reports"] = std::move(reports);
        Json checks = Json::array();
        for (const auto& c : items) {
            if (c.pass) {
                checks.push_back({{"name", c.name},
                                  {"value", c.value},
                                  {"threshold", *c.threshold},
                                  {"pass", *c.pass}});
            }
        }
        j["checks"] = std::move(checks);
        j["pass"] = all_pass;
        dest.data() << j.dump(2) << '\n';
    }

    auto& notes = dest.notes();
    for (const auto& c : items) {
        if (c.pass && !*c.pass) {
            notes << "FAIL " << c.name << " = " << format_real(c.value) << " (limit "
                  << format_real(*c.threshold) << ")\n";
        }
    }
    notes << (all_pass ? "verify: all checks passed\n" : "verify: some checks failed\n");
    return all_pass ? kSuccess : kVerificationFailed;
}

int cmd_charge(const RunConfig& cfg, Destination& dest) {
    const VerifyThresholds th;
    const ModelParams p(cfg.lambda, cfg.big_l);
    const ImplicitSolution sol(p, 0.0, KinkSign::minus);
    const KinkProfile prof = closed_form_profile(sol, default_grid(p, 0.0, cfg.solver, cfg.points));
    const double q_closed = kink_charge_closed_form(p);
    const double q_quad = kink_charge_quadrature(prof, cfg.solver);
    const double q_ref = kink_charge_reference_expression(p);
    const double rel_quad = std::abs(q_quad - q_closed) / q_closed;
    const double rel_ref = std::abs(q_ref - q_closed) / q_closed;

    if (cfg.format == OutputFormat::csv) {
        Table t;
        t.header = {"kappa",  "L",          "lambda",        "Q_closed",
                    "Q_quad", "Q_reference", "rel_diff_quad", "rel_diff_reference"};
        t.add_row({format_real(p.kappa()), format_real(p.big_l()), format_real(p.lambda()),
                   format_real(q_closed), format_real(q_quad), format_real(q_ref),
                   format_real(rel_quad), format_real(rel_ref)});
        write_csv(dest.data(), t);
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "charge";
        j["params"] = {{"lambda", p.lambda()}, {"L", p.big_l()}, {"kappa", p.kappa()}};
        j["Q_closed"] = q_closed;
        j["Q_quad"] = q_quad;
        j["Q_reference"] = q_ref;
        j["rel_diff_quad"] = rel_quad;
        j["rel_diff_reference"] = rel_ref;
        dest.data() << j.dump(2) << '\n';
    }
    dest.notes() << "charge: closed form " << format_real(q_closed) << ", quadrature "
                 << format_real(q_quad) << " (rel diff " << format_real(rel_quad)
                 << "), reference expression " << format_real(q_ref) << '\n';
    return rel_quad <= th.charge_relative ? kSuccess : kVerificationFailed;
}

int cmd_sweep(const RunConfig& cfg, Destination& dest, std::ostream& err) {
    std::ifstream in(cfg.kappa_file);
    if (!in) {
        err << "error: cannot read kappa file " << cfg.kappa_file.string() << '\n';
        return kInputError;
    }
    std::vector<double> kappas;
    try {
        kappas = parse_kappa_list(in);
    } catch (const KappaListError& e) {
        err << "error: " << cfg.kappa_file.string() << ": " << e.what() << '\n';
        return kInputError;
    }
    const std::vector<SweepItem> items = sweep(kappas, cfg.big_l, cfg.solver);
    bool failed = false;
    const double nan = std::nan("");

    if (cfg.format == OutputFormat::csv) {
        Table t;
        t.header = {"kappa", "L", "E", "Q_quad", "Q_closed", "defect", "error"};
        for (const auto& it : items) {
            const bool ok = it.report.has_value();
            failed = failed || !ok;
            std::string msg = it.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            t.add_row({format_real(it.kappa), format_real(cfg.big_l),
                       format_real(ok ? it.report->energy : nan),
                       format_real(ok ? it.report->charge_quadrature : nan),
                       format_real(ok ? it.report->charge_closed_form : nan),
                       format_real(ok ? it.report->bps_defect : nan), msg});
        }
        write_csv(dest.data(), t);
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "sweep";
        j["L"] = cfg.big_l;
        j["solver"] = solver_json(cfg.solver);
        Json rows = Json::array();
        for (const auto& it : items) {
            Json r;
            r["kappa"] = it.kappa;
            r["L"] = cfg.big_l;
            if (it.report) {
                r["E"] = it.report->energy;
                r["Q_quad"] = it.report->charge_quadrature;
                r["Q_closed"] = it.report->charge_closed_form;
                r["defect"] = it.report->bps_defect;
            } else {
                failed = true;
                r["error"] = it.error;
            }
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        dest.data() << j.dump(2) << '\n';
    }
    dest.notes() << "sweep: " << items.size() << " row(s)" << (failed ? ", some failed" : "")
                 << '\n';
    return failed ? kNumericalFailure : kSuccess;
}

}  // namespace

std::vector<double> parse_kappa_list(std::istream& is) {
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = line.find_last_not_of(" \t");
        const std::string token = line.substr(first, last - first + 1);
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size()) {
            throw KappaListError(lineno, "not a number: '" + token + "'");
        }
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw KappaListError(lineno, "kappa must be positive and finite: '" + token + "'");
        }
        out.push_back(v);
    }
    return out;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (const auto problem = validate(cfg)) {
        err << "error: " << *problem << '\n';
        return kInputError;
    }
    Destination dest(cfg, out, err);
    if (!dest.ok()) {
        err << "error: " << dest.error() << '\n';
        return kInputError;
    }
    try {
        switch (cfg.command) {
            case Command::solve:
                return cmd_solve(cfg, dest);
            case Command::verify:
                return cmd_verify(cfg, dest);
            case Command::charge:
                return cmd_charge(cfg, dest);
            case Command::sweep:
                return cmd_sweep(cfg, dest, err);
        }
    } catch (const std::exception& e) {
        err << "error: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const ParseOutcome parsed = parse_run_config(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == kSuccess ? out : err) << parsed.message << '\n';
        return parsed.exit_code;
    }
    return execute(*parsed.config, out, err);
}

}  // namespace bpskink::cli
