// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria.  Tolerances are pinned in code next to each check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modns/heat.hpp"
#include "modns/norms.hpp"
#include "modns/ns.hpp"
#include "modns/verify.hpp"

using namespace modns;
namespace vf = modns::verify;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw Failure(msg);
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_close(double got, double expect, double rel, const std::string& what) {
    require(std::isfinite(got) && std::abs(got - expect) <=
                                      rel * std::max(std::abs(expect), 1e-300),
            what + ": got " + fmt(got) + ", expected " + fmt(expect));
}

vf::CheckReport run_registry(const std::string& id, int trials = -1,
                             double growth_tol = -1.0) {
    vf::CheckSpec sp = vf::default_spec(id);
    if (trials > 0) sp.trials = trials;
    if (growth_tol > 0) sp.growth_tol = growth_tol;
    vf::CheckReport rep = vf::run_check(sp);
    require(rep.verdict == vf::Verdict::pass,
            id + " verdict " + vf::to_string(rep.verdict) + " (" + rep.note + ")");
    return rep;
}

double vf_norm_of(const VectorField& u, const NormSpec& ns) {
    double s2 = 0;
    for (int i = 0; i < u.d(); ++i) {
        double v = norm(u[i], ns);
        s2 += v * v;
    }
    return std::sqrt(s2);
}

double traj_defect_max(const Trajectory& t, double (*defect)(const VectorField&)) {
    double mx = 0;
    for (std::size_t i = 0; i < t.size(); ++i) mx = std::max(mx, defect(t[i]));
    return mx;
}

// --------------------------------------------------------------------------
// 1. Block reconstruction and Plancherel on 100 random fields.
// --------------------------------------------------------------------------
void c1_reconstruction() {
    double t0 = now_seconds();
    auto g = make_grid(2, 4, 4);
    Window w = make_window(WindowKind::smooth_sigma, g);
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        Field f = random_field(g, rng);
        Field recon(g, Rep::spectral);
        for (const Index& k : cube_indices(w)) recon += block(f, w, k);
        Field diff = recon;
        diff -= f;
        require(spectral_l2(diff) <= 1e-10 * spectral_l2(f),
                "reconstruction defect above 1e-10");
        double spat = lp_norm(f, 2.0), spec = spectral_l2(f);
        require(std::abs(spat - spec) <= 1e-10 * spec,
                "Plancherel defect above 1e-10");
    }
    double elapsed = now_seconds() - t0;
    require(elapsed < 10.0, "took " + fmt(elapsed) + " s, budget 10 s");
}

// --------------------------------------------------------------------------
// 2. Window-family norm equivalence ratios stable within 25% across the grid
//    ladder on a 50-field corpus; q-monotonicity exact.
// --------------------------------------------------------------------------
void c2_norm_equivalence() {
    run_registry("P5.4-norm-equiv", /*trials=*/25, /*growth_tol=*/0.25);
    run_registry("P5.5-dilated-equiv", /*trials=*/25, /*growth_tol=*/0.25);
    vf::CheckReport mono = run_registry("P5.9-q-monotonicity", /*trials=*/25);
    for (double r : mono.ratios)
        require(r <= 1.0 + 1e-12, "q-monotonicity violated: ratio " + fmt(r));
}

// --------------------------------------------------------------------------
// 3. STFT-quadrature vs block norm ratios stable within 25% under lattice
//    refinement for s in {-1, 0, 1/2} and (p, q) drawn from {1, 2, inf}.
// --------------------------------------------------------------------------
void c3_stft_equivalence() { run_registry("P5.1-stft-equiv", -1, 0.25); }

// --------------------------------------------------------------------------
// 4. Exponential-into-dyadic embedding with the band-edge worst case; no
//    trial exceeds 1.25x the coarsest-rung constant.
// --------------------------------------------------------------------------
void c4_embedding() {
    vf::CheckReport rep = run_registry("P5.8-besov-embedding");
    require(!rep.ladder_stat.empty(), "no ladder statistics recorded");
    for (double c : rep.ladder_stat)
        require(c <= 1.25 * rep.ladder_stat.front(),
                "rung constant " + fmt(c) + " exceeds 1.25x rung 0 (" +
                    fmt(rep.ladder_stat.front()) + ")");
    for (double r : rep.ratios)
        require(r <= 1.25 * rep.ladder_stat.front(),
                "trial ratio " + fmt(r) + " exceeds 1.25x rung 0");
}

// --------------------------------------------------------------------------
// 5. Per-block heat decay: fitted rate positive, <= 10% drift across the
//    ladder, and exact (1e-10) on single-mode oracles.
// --------------------------------------------------------------------------
void c5_heat_decay() {
    run_registry("L6.1-heat-decay", -1, /*growth_tol=*/0.10);

    auto g = make_grid(2, 4, 4);
    Window w = make_window(WindowKind::smooth_sigma, g);
    std::vector<double> times;
    for (int i = 1; i <= 8; ++i) times.push_back(0.02 * i);
    struct Oracle {
        Index n, k;
    };
    // fitted rate for a single mode at xi0 inside cube k is (|xi0|/|k|)^2
    for (const Oracle& oc : {Oracle{Index{8, 4, 0}, Index{2, 1, 0}},
                             Oracle{Index{9, 0, 0}, Index{2, 0, 0}}}) {
        Field f(g, Rep::spectral);
        f[g->flat(oc.n)] = cplx{1, 0};
        double xi2 = g->freq_l2sq(oc.n);
        double k2 = l2(oc.k, 2) * l2(oc.k, 2);
        double got = block_decay_fit(f, w, oc.k, 2.0, times);
        require(std::abs(got - xi2 / k2) <= 1e-10,
                "single-mode decay fit " + fmt(got) + " vs " + fmt(xi2 / k2));
    }
}

// --------------------------------------------------------------------------
// 6. Heat/Duhamel block bounds: the LHS/RHS ratio is uniformly bounded and
//    flat in |k| (log-log slope within 0.1) for the k-weighted estimates;
//    the unweighted Duhamel-gradient bound only forbids upward trends.
//    Three averaged trials per estimate.
// --------------------------------------------------------------------------
void c6_block_bounds() {
    struct Sweep {
        std::string id;
        HeatExponents e;
        bool forcing;
        int d, K;
        // smallest admissible log-log slope: 0 (up to tolerance) for the
        // k-weighted estimates, whose two sides carry matching |k| factors.
        // The unweighted Duhamel-gradient bound has no compensating weight
        // and its per-block sharp constant provably decays (rescaling t by
        // |k|^2 shows the one-band Duhamel operator norm from L^2_t to
        // L^4_t is Theta(|k|^{-1/2})), so only upward trends are ruled out
        // there and the ratio is instead required to stay uniformly bounded.
        double slope_min = -0.1;
    };
    std::vector<Sweep> sweeps;
    {
        HeatExponents e;
        e.r = 2;
        e.p = 6;
        sweeps.push_back({"C6.8-lgamma2-heat", e, false, 2, 4});
    }
    {
        HeatExponents e;
        e.p = 4;
        sweeps.push_back({"C6.9-duhamel-gradient", e, true, 2, 4});
    }
    sweeps.push_back({"C6.10-strichartz-like", HeatExponents{}, false, 2, 4});
    sweeps.push_back({"C6.10-duhamel-gradient", HeatExponents{}, true, 2, 4,
                      /*slope_min=*/-1.5});
    {
        HeatExponents e;
        e.r = 2;
        e.p = 8;
        sweeps.push_back({"C6.11-supercritical-heat", e, false, 3, 3});
    }

    for (const Sweep& sw : sweeps) {
        auto g = make_grid(sw.d, 4, sw.K);
        Window w = make_window(WindowKind::smooth_sigma, g);
        std::vector<Index> ks = vf::vdetail::high_cubes(sw.d, sw.K);
        std::vector<double> mean(ks.size(), 0.0);
        std::mt19937_64 rng(vf::vdetail::fnv1a(sw.id));
        const int trials = 3;
        for (int t = 0; t < trials; ++t) {
            SmoothingInput in;
            in.T = 1.0;
            in.nt = 24;
            Field f0 = vf::vdetail::random_decay_field(g, rng, 0.3);
            Field f1 = vf::vdetail::random_decay_field(g, rng, 0.3);
            std::vector<Field> fc;
            if (sw.forcing) {
                fc = vf::vdetail::forcing_series(f0, f1, in.T, in.nt);
                in.forcing = &fc;
            } else {
                in.u0 = &f0;
            }
            for (std::size_t i = 0; i < ks.size(); ++i) {
                in.k = ks[i];
                mean[i] += smoothing_ratio(sw.id, in, sw.e, w) / trials;
            }
        }
        std::vector<double> logk, logr;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            require(std::isfinite(mean[i]) && mean[i] > 0,
                    sw.id + ": degenerate ratio in the k-sweep");
            require(mean[i] <= 10.0,
                    sw.id + ": ratio " + fmt(mean[i]) + " not uniformly bounded");
            logk.push_back(std::log(l2(ks[i], sw.d)));
            logr.push_back(std::log(mean[i]));
        }
        double slope = modns::detail::ls_slope(logk, logr);
        require(slope >= sw.slope_min && slope <= 0.1,
                sw.id + ": log-ratio slope " + fmt(slope) + " outside [" +
                    fmt(sw.slope_min) + ", 0.1]");
    }
}

// --------------------------------------------------------------------------
// 7. One-octant bilinear algebra: the empirical constant grows like 2^{C|s|}
//    (positive slope, R^2 >= 0.9 over s in {-2, -1, -1/2}).
// --------------------------------------------------------------------------
void c7_bilinear_octant() { run_registry("L9.1-bilinear-octant"); }

// --------------------------------------------------------------------------
// 8. Opposite-octant counterexample: ratio = 2^{-2 s |k|_1} within 10% for
//    |k|_1 in {2, 4, 8}.
// --------------------------------------------------------------------------
void c8_counterexample() {
    run_registry("S9-counterexample");

    auto g = make_grid(2, 4, 4);
    const double s = -1.0;
    NormSpec ns = vf::vdetail::mk_spec(NormFamily::E, s, 2, 1, WindowKind::sharp_cube);
    for (int kk : {1, 2, 4}) {
        Index nu{kk * 4, kk * 4, 0}, nv{-kk * 4, -kk * 4, 0};
        Field u(g, Rep::spectral), v(g, Rep::spectral);
        u[g->flat(nu)] = cplx{1, 0};
        v[g->flat(nv)] = cplx{1, 0};
        Field w = product_dealiased(u, v);
        double ratio = e_norm(w, ns) / (e_norm(u, ns) * e_norm(v, ns));
        require_close(ratio, std::exp2(-2.0 * s * 2.0 * kk), 0.10,
                      "two-mode ratio at |k|_1 = " + fmt(2.0 * kk));
    }
}

// --------------------------------------------------------------------------
// 9. Picard solver on d=2, m=8, K=8, nt=64, T=1: zero data exact, bisected
//    small data converges with contraction < 0.9 in <= 15 iterations in under
//    5 minutes, mild-equation residual <= 10x the solver tolerance, octant
//    and divergence defects <= 1e-9 along the trajectory.
// --------------------------------------------------------------------------
void c9_picard() {
    double t0 = now_seconds();

    SolverConfig cfg;
    cfg.regime = Regime::octant_E;
    cfg.r = 2.0;
    cfg.s = -1.0;
    cfg.T = 1.0;
    cfg.prune_rel = 1e-10;

    // (a) zero data -> identically zero trajectory in one iteration
    {
        auto g = make_grid(2, 8, 8);
        cfg.nt = 64;
        PicardResult z = picard_solve(VectorField(g, Rep::spectral), cfg);
        require(z.diag.converged && z.diag.iterations == 1,
                "zero data did not converge in one iteration");
        for (std::size_t i = 0; i < z.traj.size(); ++i)
            for (int c = 0; c < 2; ++c)
                for (const cplx& v : z.traj[i][c].values())
                    require(v == cplx{0, 0}, "zero data gave a nonzero solution");
    }

    // amplitude found by bisection on a coarse proxy grid, then halved as a
    // refinement margin before the production solve
    double eps;
    {
        auto gc = make_grid(2, 4, 4);
        VectorField u0c = make_initial_data(gc, DataKind::L2_octant, cfg.s, 2026);
        SolverConfig coarse = cfg;
        coarse.nt = 16;
        eps = 0.5 * amplitude_bisect(u0c, coarse, 0.9, 1.0, 6);
        require(eps > 0, "amplitude bisection found no contracting scale");
    }

    auto g = make_grid(2, 8, 8);
    VectorField u0 = cplx{eps, 0} * make_initial_data(g, DataKind::L2_octant, cfg.s, 2026);
    cfg.nt = 64;
    PicardResult res = picard_solve(u0, cfg);
    require(res.diag.converged, "production solve did not converge");
    require(res.diag.iterations <= 15,
            "converged only after " + fmt(res.diag.iterations) + " iterations");
    for (double q : res.diag.ratios)
        require(q < 0.9, "contraction ratio " + fmt(q) + " not below 0.9");

    // (c) mild-equation residual in the working norm
    {
        const TimeNormSpec wn = cfg.working_norm(2);
        Trajectory forcing(cfg.T, std::size_t(cfg.nt), g, Rep::spectral);
        for (std::size_t i = 0; i < res.traj.size(); ++i)
            forcing[i] = nonlinear_term(res.traj[i]);
        Trajectory duh = duhamel_all(forcing);
        Trajectory resid(cfg.T, std::size_t(cfg.nt), g, Rep::spectral);
        for (std::size_t i = 0; i < res.traj.size(); ++i)
            resid[i] = res.traj[i] - heat_apply(u0, res.traj.time(i)) - duh[i];
        double rn = timespace_norm(resid, wn, cfg.prune_rel);
        double un = timespace_norm(res.traj, wn, cfg.prune_rel);
        require(rn <= 10.0 * cfg.picard_tol * std::max(un, 1.0),
                "mild residual " + fmt(rn) + " above 10x solver tolerance");
    }

    // (d) structural defects along the trajectory
    require(traj_defect_max(res.traj, octant_defect) <= 1e-9,
            "octant defect above 1e-9");
    require(traj_defect_max(res.traj, divergence_defect) <= 1e-9,
            "divergence defect above 1e-9");

    double elapsed = now_seconds() - t0;
    require(elapsed < 300.0, "took " + fmt(elapsed) + " s, budget 300 s");
}

// --------------------------------------------------------------------------
// 10. Scaling laws under f -> f(lambda x) on 20 random fields per property.
// --------------------------------------------------------------------------
void c10_scaling() {
    run_registry("P8.1-scaling", /*trials=*/10);
    run_registry("P8.2-scaling-small-o", /*trials=*/10);
    run_registry("P8.3-scaling-inverse", /*trials=*/20);
}

// --------------------------------------------------------------------------
// 11. Analyticity propagation: fitted radius nondecreasing over the first
//     half horizon, dominates s + c sqrt(t) with c > 0, and the radius
//     zero-crossing time agrees within 30% between nt = 64 and nt = 128.
// --------------------------------------------------------------------------
void c11_analyticity() {
    auto g = make_grid(2, 4, 4);
    const double s = -1.0;
    VectorField u0 = make_initial_data(g, DataKind::exp_weight_octant, s, 11);

    SolverConfig cfg;
    cfg.regime = Regime::octant_E;
    cfg.r = 2.0;
    cfg.s = s;
    cfg.T = 1.0;

    double eps;
    {
        SolverConfig coarse = cfg;
        coarse.nt = 16;
        // the early-time radius transient from the quadratic term scales
        // like eps^2 while the heat-flow steepening is eps-independent, so
        // monotone radius growth needs eps well inside the contraction edge
        eps = 0.125 * amplitude_bisect(u0, coarse, 0.9, 1.0, 8);
        require(eps > 0, "amplitude bisection found no contracting scale");
    }
    VectorField data = cplx{eps, 0} * u0;

    std::vector<double> crossing;
    for (int nt : {64, 128}) {
        cfg.nt = nt;
        PicardResult res = picard_solve(data, cfg);
        require(res.diag.converged, "solve did not converge at nt " + fmt(nt));
        std::vector<double> rad(res.traj.size());
        for (std::size_t i = 0; i < res.traj.size(); ++i)
            rad[i] = analyticity_radius(res.traj[i]);
        require(std::isfinite(rad[0]) && rad[0] < 0,
                "data radius not negative: " + fmt(rad[0]));
        double cfit = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; 2 * i <= res.traj.size(); ++i) {
            require(std::isfinite(rad[i]), "radius fit undefined mid-run");
            require(rad[i] >= rad[i - 1] - 0.02 * std::abs(rad[i - 1]),
                    "radius decreased in the first half horizon");
            cfit = std::min(cfit, (rad[i] - s) / std::sqrt(res.traj.time(i)));
        }
        require(cfit > 0, "no positive sqrt-growth rate below the radius");
        // first sign change, linearly interpolated between grid times
        double tc = -1;
        for (std::size_t i = 1; i < rad.size(); ++i)
            if (rad[i - 1] < 0 && rad[i] >= 0) {
                double f = -rad[i - 1] / (rad[i] - rad[i - 1]);
                tc = res.traj.time(i - 1) + f * res.traj.dt();
                break;
            }
        require(tc > 0, "radius never crossed zero at nt " + fmt(nt));
        crossing.push_back(tc);
    }
    require(std::abs(crossing[1] - crossing[0]) <=
                0.30 * std::max(crossing[0], crossing[1]),
            "zero-crossing times " + fmt(crossing[0]) + " and " + fmt(crossing[1]) +
                " differ by more than 30%");
}

// --------------------------------------------------------------------------
// 12. Factorial-normalized derivative growth: the decaying-spectrum probe is
//     bounded through |alpha| = 12 at rho = 0.2 (uniformly in the band
//     width), while the heavy-tail probe blows up by |alpha| = 12 once rho
//     exceeds the reciprocal band edge, with a blow-up factor that grows
//     with the band (the torus rendering of "exceeds any fixed bound").
// --------------------------------------------------------------------------
void c12_gevrey() {
    run_registry("PA.3-gevrey");

    const std::vector<Index> alphas = {Index{2, 0, 0}, Index{4, 0, 0}, Index{3, 3, 0},
                                       Index{6, 0, 0}, Index{12, 0, 0}, Index{6, 6, 0}};
    const double rho_small = 0.2, rho_large = 4.0, p = 2.0;
    std::vector<double> blowup;
    for (int K : {4, 8}) {
        auto g = make_grid(2, 4, K);
        std::mt19937_64 rng(12);
        Field decay = vf::vdetail::random_decay_field(g, rng, 0.5);
        Field heavy = vf::vdetail::random_decay_field(g, rng, -0.5);
        double dmax = 0, dfirst = 0, hmax = 0, hfirst = 0;
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            double rd = gevrey_ratio(decay, alphas[i], rho_small, p);
            double rh = gevrey_ratio(heavy, alphas[i], rho_large, p);
            require(std::isfinite(rd) && std::isfinite(rh),
                    "derivative-growth ratio not finite");
            if (i == 0) dfirst = rd, hfirst = rh;
            dmax = std::max(dmax, rd);
            hmax = std::max(hmax, rh);
        }
        require(dmax <= dfirst * (1.0 + 1e-9),
                "decaying probe not bounded by its lowest-order ratio at K=" +
                    fmt(K) + " (grew by " + fmt(dmax / dfirst) + ")");
        blowup.push_back(hmax / hfirst);
        require(blowup.back() >= 1e3,
                "heavy-tail blow-up only " + fmt(blowup.back()) + " at K=" + fmt(K));
    }
    // on a torus the band is finite, so unboundedness is rendered as growth
    // of the blow-up factor with the band width
    require(blowup[1] >= 4.0 * blowup[0],
            "heavy-tail blow-up did not grow with the frequency band");
}

// --------------------------------------------------------------------------
// 13. Small-data regime in the hybrid norm: sup_t solution norm <= 3x the
//     data norm for the bisected amplitude, at (d, r) = (2, 2) and (3, 3).
// --------------------------------------------------------------------------
void c13_hybrid_small_data() {
    struct Case {
        int d, K;
        double r;
    };
    for (const Case& cs : {Case{2, 4, 2.0}, Case{3, 2, 3.0}}) {
        auto g = make_grid(cs.d, 4, cs.K);
        VectorField u0 = make_initial_data(g, DataKind::random_octant, -1.0, 13);
        NormSpec data_norm =
            vf::vdetail::mk_spec(NormFamily::Mdot, -1.0, cs.r, 1);
        u0 *= cplx{1.0 / vf_norm_of(u0, data_norm), 0};

        SolverConfig cfg;
        cfg.regime = Regime::small_Mdot;
        cfg.r = cs.r;
        cfg.T = 1.0;
        cfg.nt = 8;

        double eps = amplitude_bisect(u0, cfg, 0.9, 0.5, 4);
        require(eps > 0, "amplitude bisection found no contracting scale");
        PicardResult res = picard_solve(cplx{eps, 0} * u0, cfg);
        require(res.diag.converged, "solve did not converge");
        double sup = 0;
        for (std::size_t i = 0; i < res.traj.size(); ++i)
            sup = std::max(sup, vf_norm_of(res.traj[i], data_norm));
        require(sup <= 3.0 * eps, "sup_t norm " + fmt(sup) + " above 3x data norm " +
                                      fmt(eps) + " at d=" + fmt(cs.d));
    }
}

} // namespace

int main() {
    struct Criterion {
        int num;
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "block reconstruction and Plancherel", c1_reconstruction},
        {2, "window-family norm equivalences and q-monotonicity", c2_norm_equivalence},
        {3, "stft-quadrature norm equivalence", c3_stft_equivalence},
        {4, "exponential-into-dyadic embedding", c4_embedding},
        {5, "per-block heat decay rates", c5_heat_decay},
        {6, "heat/Duhamel block bounds flat in |k|", c6_block_bounds},
        {7, "one-octant bilinear constant growth", c7_bilinear_octant},
        {8, "opposite-octant counterexample", c8_counterexample},
        {9, "Picard mild solver", c9_picard},
        {10, "dilation scaling laws", c10_scaling},
        {11, "analyticity radius propagation", c11_analyticity},
        {12, "factorial derivative growth separation", c12_gevrey},
        {13, "hybrid-norm small-data persistence", c13_hybrid_small_data},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        double t0 = now_seconds();
        std::string verdict = "PASS", detail;
        try {
            c.fn();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = std::string(" -- ") + e.what();
            ++failures;
        }
        std::printf("%s criterion %2d: %s (%.1f s)%s\n", verdict.c_str(), c.num,
                    c.name, now_seconds() - t0, detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of 13 criteria failed\n", failures);
    else std::printf("all 13 criteria passed\n");
    return failures;
}
