// Command-line frontend: decompose fields into frequency blocks, evaluate
// norms, run the mild-solution solver, run the verification suite, rescale
// fields.  Exit codes: 0 success, 2 hypothesis violation, 1 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "modns/decomp.hpp"
#include "modns/grid.hpp"
#include "modns/heat.hpp"
#include "modns/io.hpp"
#include "modns/norms.hpp"
#include "modns/ns.hpp"
#include "modns/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace modns;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitHypothesis = 2;

/// Run configuration: every flag has a key=value twin in the config file;
/// flags win over file values, and filled-in defaults are echoed.
struct RunConfig {
    int d = 2, m = 4, K = 4, nt = 32;
    double s = -1.0, r = 2.0, T = 1.0, eps = 0.0;
    std::uint64_t seed = 1;
    std::string regime = "octant_E";
    std::string out = "out";
    int threads = 0;

    static const std::vector<std::string>& keys() {
        static const std::vector<std::string> k = {
            "d", "m", "K", "nt", "s", "r", "T", "eps", "seed", "regime", "out",
            "threads"};
        return k;
    }
    void set(const std::string& key, const std::string& val) {
        if (key == "d") d = std::stoi(val);
        else if (key == "m") m = std::stoi(val);
        else if (key == "K") K = std::stoi(val);
        else if (key == "nt") nt = std::stoi(val);
        else if (key == "s") s = std::stod(val);
        else if (key == "r") r = std::stod(val);
        else if (key == "T") T = std::stod(val);
        else if (key == "eps") eps = std::stod(val);
        else if (key == "seed") seed = std::stoull(val);
        else if (key == "regime") regime = val;
        else if (key == "out") out = val;
        else if (key == "threads") threads = std::stoi(val);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    std::string get(const std::string& key) const {
        std::ostringstream os;
        if (key == "d") os << d;
        else if (key == "m") os << m;
        else if (key == "K") os << K;
        else if (key == "nt") os << nt;
        else if (key == "s") os << s;
        else if (key == "r") os << r;
        else if (key == "T") os << T;
        else if (key == "eps") os << eps;
        else if (key == "seed") os << seed;
        else if (key == "regime") os << regime;
        else if (key == "out") os << out;
        else if (key == "threads") os << threads;
        return os.str();
    }
    /// Lossless round trip: parse(serialize(cfg)) == cfg.
    std::string serialize() const {
        std::ostringstream os;
        for (const std::string& k : keys()) os << k << "=" << get(k) << "\n";
        return os.str();
    }
    void parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto pos = line.find('=');
            if (pos == std::string::npos)
                throw std::invalid_argument("config: malformed line '" + line + "'");
            set(line.substr(0, pos), line.substr(pos + 1));
        }
    }
};

void echo_config(std::ostream& os, const RunConfig& cfg, const char* comment = "# ") {
    std::istringstream in(cfg.serialize());
    std::string line;
    while (std::getline(in, line)) os << comment << line << "\n";
}

Regime parse_regime(const std::string& s) {
    if (s == "octant_E") return Regime::octant_E;
    if (s == "small_Mdot") return Regime::small_Mdot;
    throw std::invalid_argument("regime must be octant_E or small_Mdot");
}

NormFamily parse_family(const std::string& s) {
    if (s == "E") return NormFamily::E;
    if (s == "M") return NormFamily::M;
    if (s == "Mdot") return NormFamily::Mdot;
    if (s == "Besov") return NormFamily::Besov;
    if (s == "BesovHom") return NormFamily::BesovHom;
    throw std::invalid_argument("family must be E, M, Mdot, Besov or BesovHom");
}

WindowKind parse_variant(const std::string& s) {
    if (s == "smooth") return WindowKind::smooth_sigma;
    if (s == "sharp") return WindowKind::sharp_cube;
    if (s == "dyadic") return WindowKind::dyadic_phi;
    if (s == "dilated") return WindowKind::dilated;
    throw std::invalid_argument("variant must be smooth, sharp, dyadic or dilated");
}

int cmd_decompose(const std::string& field_path, const std::string& variant,
                  const RunConfig& cfg) {
    Field f = load_field(field_path);
    Window w = make_window(parse_variant(variant), f.grid_ptr());
    std::ofstream os(cfg.out);
    if (!os) throw std::runtime_error("cannot open output '" + cfg.out + "'");
    echo_config(os, cfg);
    detail::BlockScan scan(f);
    if (w.kind() == WindowKind::dyadic_phi) {
        os << "j,l2\n";
        for (int j = w.jmin(); j <= w.jmax(); ++j)
            os << j << "," << scan.dyadic_lp(w, j, false, 2.0) << "\n";
    } else {
        os << "k,l2\n";
        for (const Index& k : cube_indices(w)) {
            double v = scan.cube_lp(w, k, 2.0);
            if (v == 0) continue;
            os << k[0];
            for (int i = 1; i < f.grid().d(); ++i) os << " " << k[i];
            os << "," << v << "\n";
        }
    }
    std::cout << "wrote per-block norms to " << cfg.out << "\n";
    return kExitOk;
}

int cmd_norm(const std::string& field_path, const std::string& family, double s,
             double p, double q) {
    Field f = load_field(field_path);
    NormSpec ns;
    ns.family = parse_family(family);
    ns.s = s;
    ns.p = p;
    ns.q = q;
    ns.validate();
    std::cout << norm(f, ns) << "\n";
    return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, const std::string& data_kind) {
    auto g = make_grid(cfg.d, cfg.m, cfg.K);
    SolverConfig sc;
    sc.regime = parse_regime(cfg.regime);
    sc.r = cfg.r;
    sc.s = sc.regime == Regime::octant_E ? cfg.s : -1.0;
    sc.T = cfg.T;
    sc.nt = cfg.nt;
    sc.validate(cfg.d);
    VectorField u0 = make_initial_data(g, parse_data_kind(data_kind),
                                       std::abs(cfg.s), cfg.seed);
    double eps = cfg.eps;
    if (eps <= 0) eps = amplitude_bisect(u0, sc);
    if (eps <= 0) throw std::runtime_error("amplitude bisection found no contracting scale");
    PicardResult res = picard_solve(cplx{eps, 0} * u0, sc);

    fs::create_directories(cfg.out);
    for (std::size_t i = 0; i < res.traj.size(); ++i)
        for (int c = 0; c < cfg.d; ++c)
            save_field(res.traj[i][c], cfg.out + "/t" + std::to_string(i) + "_c" +
                                           std::to_string(c) + ".fld");
    std::ofstream os(cfg.out + "/diagnostics.csv");
    echo_config(os, cfg);
    os << "# eps=" << eps << "\n";
    os << "iter,norm,diff,ratio\n";
    for (std::size_t i = 0; i < res.diag.norms.size(); ++i) {
        os << i << "," << res.diag.norms[i] << ","
           << (i < res.diag.diff_norms.size() ? res.diag.diff_norms[i] : 0.0) << ","
           << (i < res.diag.ratios.size() ? res.diag.ratios[i] : 0.0) << "\n";
    }
    std::cout << (res.diag.converged ? "converged" : "did not converge") << " in "
              << res.diag.iterations << " iterations, eps=" << eps << "\n";
    return res.diag.converged ? kExitOk : kExitInternal;
}

int cmd_verify(const std::vector<std::string>& ids, const RunConfig& cfg) {
    verify::SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.threads = cfg.threads;
    std::vector<verify::CheckReport> reps = verify::run_suite(ids, opt);
    fs::create_directories(cfg.out);
    {
        std::ofstream os(cfg.out + "/reports.json");
        verify::write_json(reps, os);
    }
    {
        std::ofstream os(cfg.out + "/reports.csv");
        os << "# config: d=" << cfg.d << " seed=" << cfg.seed << "\n";
        verify::write_csv(reps, os);
    }
    {
        std::ofstream os(cfg.out + "/summary.md");
        verify::write_markdown(reps, os);
    }
    int fails = 0;
    for (const auto& r : reps) {
        std::cout << r.id << ": " << verify::to_string(r.verdict) << "\n";
        if (r.verdict == verify::Verdict::fail) ++fails;
    }
    std::cout << "wrote reports to " << cfg.out << "\n";
    return fails == 0 ? kExitOk : kExitInternal;
}

int cmd_scale(const std::string& field_path, double lambda, const RunConfig& cfg) {
    Field f = load_field(field_path);
    NormSpec ns;
    ns.family = NormFamily::E;
    ns.s = cfg.s;
    ns.p = 2;
    ns.q = 1;
    bool overflow = false;
    Field fl = scale_field(f, lambda, &overflow);
    save_field(fl, cfg.out);
    std::cout << "norm_before=" << norm(f, ns) << " norm_after=" << norm(fl, ns)
              << (overflow ? " (band overflow: some modes dropped)" : "") << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit: frequency-block norms, heat/Duhamel "
                 "estimates, mild Navier-Stokes solver, verification suite"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;
    app.add_option("--config", config_file, "key=value configuration file");
    // flags override the config file; parse order handles precedence below
    std::map<std::string, std::string> flag_vals;
    for (const std::string& key : RunConfig::keys())
        app.add_option_function<std::string>(
            "--" + key, [&flag_vals, key](const std::string& v) { flag_vals[key] = v; },
            "override config key '" + key + "'");

    std::string field_path, variant = "smooth", family = "E", data_kind = "L2_octant";
    double p = 2, q = 1, lambda = 2, s_norm = -1;
    std::vector<std::string> ids;

    auto* dec = app.add_subcommand("decompose", "write per-block norms CSV");
    dec->fallthrough();
    dec->add_option("field", field_path)->required();
    dec->add_option("--variant", variant, "smooth | sharp | dyadic | dilated");

    auto* nrm = app.add_subcommand("norm", "print one norm value");
    nrm->fallthrough();
    nrm->add_option("field", field_path)->required();
    nrm->add_option("--family", family, "E | M | Mdot | Besov | BesovHom");
    nrm->add_option("--sn", s_norm, "norm weight exponent");
    nrm->add_option("--p", p);
    nrm->add_option("--q", q);

    auto* evo = app.add_subcommand("evolve", "run the mild-solution solver");
    evo->fallthrough();
    evo->add_option("--data", data_kind,
                    "polynomial_octant | exp_weight_octant | random_octant | L2_octant");

    auto* ver = app.add_subcommand("verify", "run verification checks");
    ver->fallthrough();
    ver->add_option("ids", ids, "check ids, or 'all'");

    auto* scl = app.add_subcommand("scale", "write scaled field + norms");
    scl->fallthrough();
    scl->add_option("field", field_path)->required();
    scl->add_option("--lambda", lambda)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty()) cfg.parse_file(config_file);
        for (const auto& [k, v] : flag_vals) cfg.set(k, v); // flags win
        if (dec->parsed()) return cmd_decompose(field_path, variant, cfg);
        if (nrm->parsed()) return cmd_norm(field_path, family, s_norm, p, q);
        if (evo->parsed()) return cmd_evolve(cfg, data_kind);
        if (ver->parsed()) {
            if (ids.empty()) ids.push_back("all");
            return cmd_verify(ids, cfg);
        }
        if (scl->parsed()) return cmd_scale(field_path, lambda, cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
