#include "phaseflow/scenario.hpp"

#include "phaseflow/core.hpp"
#include "phaseflow/errors.hpp"
#include "phaseflow/interference.hpp"
#include "phaseflow/io.hpp"
#include "phaseflow/propagators.hpp"
#include "phaseflow/relativistic.hpp"
#include "phaseflow/stationary.hpp"
#include "phaseflow/tdse.hpp"
#include "phaseflow/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace phaseflow {

namespace fs = std::filesystem;

namespace {

// ---- config reading ---------------------------------------------------------

class Params {
public:
    Params(const Json* obj, std::string where) : where_(std::move(where))
    {
        if (obj && !obj->is_null()) {
            if (!obj->is_object())
                fail(ErrorKind::config, where_ + ": must be an object");
            obj_ = obj;
        }
    }

    [[noreturn]] void bad(const std::string& key, const std::string& msg) const
    {
        fail(ErrorKind::config, where_ + "." + key + ": " + msg);
    }

    double num(const std::string& key, double def)
    {
        double x = def;
        if (const Json* v = take(key)) {
            if (!v->is_number())
                bad(key, "must be a number");
            x = v->get<double>();
        }
        if (!std::isfinite(x))
            bad(key, "must be finite");
        resolved_[key] = x;
        return x;
    }

    double positive(const std::string& key, double def)
    {
        const double x = num(key, def);
        if (!(x > 0))
            bad(key, "must be positive");
        return x;
    }

    double nonnegative(const std::string& key, double def)
    {
        const double x = num(key, def);
        if (x < 0)
            bad(key, "must be nonnegative");
        return x;
    }

    std::size_t count(const std::string& key, std::size_t def, std::size_t min = 1)
    {
        std::size_t n = def;
        if (const Json* v = take(key)) {
            if (!v->is_number_integer() || v->get<long long>() < 0)
                bad(key, "must be a nonnegative integer");
            n = v->get<std::size_t>();
        }
        if (n < min)
            bad(key, "must be at least " + std::to_string(min));
        resolved_[key] = n;
        return n;
    }

    bool flag(const std::string& key, bool def)
    {
        bool b = def;
        if (const Json* v = take(key)) {
            if (!v->is_boolean())
                bad(key, "must be true or false");
            b = v->get<bool>();
        }
        resolved_[key] = b;
        return b;
    }

    std::string choice(const std::string& key, const std::string& def, const std::vector<std::string>& allowed)
    {
        std::string s = def;
        if (const Json* v = take(key)) {
            if (!v->is_string())
                bad(key, "must be a string");
            s = v->get<std::string>();
        }
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed)
                list += (list.empty() ? "" : ", ") + a;
            bad(key, "must be one of " + list);
        }
        resolved_[key] = s;
        return s;
    }

    std::vector<double> numbers(const std::string& key, const std::vector<double>& def)
    {
        std::vector<double> out = def;
        if (const Json* v = take(key)) {
            if (!v->is_array() || v->empty())
                bad(key, "must be a non-empty array of numbers");
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number())
                    bad(key, "must be a non-empty array of numbers");
                out.push_back(e.get<double>());
            }
        }
        for (double x : out)
            if (!std::isfinite(x))
                bad(key, "entries must be finite");
        resolved_[key] = out;
        return out;
    }

    // {"min": a, "max": b, "n": k}; absent means auto
    std::optional<Grid1D> grid(const std::string& key)
    {
        const Json* v = take(key);
        if (!v)
            return std::nullopt;
        Params g(v, where_ + "." + key);
        const double lo = g.num("min", 0), hi = g.num("max", 0);
        const std::size_t n = g.count("n", 0, 2);
        g.finish();
        if (!(lo < hi))
            bad(key, "needs min < max");
        return Grid1D(lo, hi, n);
    }

    void resolve(const std::string& key, const Grid1D& g)
    {
        resolved_[key] = Json{{"min", g.min}, {"max", g.max}, {"n", g.n}};
    }

    void finish() const
    {
        if (!obj_)
            return;
        for (auto it = obj_->begin(); it != obj_->end(); ++it)
            if (!seen_.count(it.key())) {
                std::string list;
                for (const auto& k : seen_)
                    list += (list.empty() ? "" : ", ") + k;
                bad(it.key(), "unknown key (accepted: " + list + ")");
            }
    }

    const Json& resolved() const { return resolved_; }

private:
    const Json* take(const std::string& key)
    {
        seen_.insert(key);
        if (!obj_)
            return nullptr;
        auto it = obj_->find(key);
        return it == obj_->end() ? nullptr : &*it;
    }

    const Json* obj_ = nullptr;
    std::string where_;
    std::set<std::string> seen_;
    Json resolved_ = Json::object();
};

// Module validation errors surface as config errors prefixed with the section.
template <class F>
void validated(const std::string& where, F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        if (e.is_config())
            fail(ErrorKind::config, where + ": " + e.what());
        throw;
    }
}

GateMode gate_mode(Params& p, const std::string& def)
{
    return p.choice("gate", def, {"enforce", "warn"}) == "warn" ? GateMode::warn : GateMode::enforce;
}

// ---- run context --------------------------------------------------------------

struct Context {
    Context(Params p, Params g) : params(std::move(p)), grids(std::move(g)) {}

    Params params;
    Params grids;
    const Json* times = nullptr;
    bool times_used = false;
    fs::path dir;
    std::vector<std::string> files;
    Json metrics = Json::object();
    Json comparisons = Json::object();

    CsvWriter csv(const std::string& name, const std::vector<std::string>& cols,
                  const std::vector<std::string>& units)
    {
        files.push_back(name);
        return CsvWriter(dir / name, cols, units);
    }

    // rejects unknown keys before any heavy work starts
    void ready() const
    {
        params.finish();
        grids.finish();
        if (times && !times_used)
            fail(ErrorKind::config, "times: not used by this scenario");
    }

    std::vector<double> time_list(const std::vector<double>& def)
    {
        times_used = true;
        std::vector<double> out = def;
        if (times && !times->is_null()) {
            if (!times->is_array() || times->empty())
                fail(ErrorKind::config, "times: must be a non-empty array of numbers");
            out.clear();
            for (const auto& e : *times) {
                if (!e.is_number() || !std::isfinite(e.get<double>()) || e.get<double>() < 0)
                    fail(ErrorKind::config, "times: entries must be finite and nonnegative");
                out.push_back(e.get<double>());
            }
        }
        return out;
    }
};

Json cplx_json(cplx z)
{
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

// stores f() under key, or null plus a reason when the metric is unavailable
void metric_or_null(Json& dst, const std::string& key, const std::function<Json()>& f)
{
    try {
        dst[key] = f();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::metric_unavailable)
            throw;
        dst[key] = nullptr;
        dst[key + "_unavailable"] = e.what();
    }
}

std::size_t cells_for(double span, double step)
{
    return static_cast<std::size_t>(std::ceil(span / step)) + 1;
}

std::size_t pow2_at_least(double n)
{
    std::size_t k = 1;
    while (static_cast<double>(k) < n)
        k <<= 1;
    return k;
}

ProbabilityField1D field(const Grid1D& g, std::vector<double> v)
{
    return ProbabilityField1D{g, std::move(v)};
}

double mean_of(const ProbabilityField1D& P)
{
    const double h = P.grid.spacing();
    std::vector<double> w(P.samples.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = P.grid[i] * P.samples[i];
    return trapezoid(w, h) / trapezoid(P.samples, h);
}

std::vector<double> peak_normalized(std::vector<double> v)
{
    double m = 0;
    for (double x : v)
        m = std::max(m, x);
    if (m > 0)
        for (double& x : v)
            x /= m;
    return v;
}

// ---- two-slit and Aharonov-Bohm -------------------------------------------------

TwoSlitConfig slit_config(Params& p, bool kicked)
{
    TwoSlitConfig cfg;
    cfg.y0 = p.num("y0", 1000);
    cfg.delta = p.num("delta", 100);
    cfg.v0 = p.num("v0", 1);
    cfg.X = p.num("X", 1e5);
    cfg.t = p.num("t", 1e5);
    if (kicked)
        cfg.kick = Kick{p.num("h0", 2e-4), p.num("T", 1000)};
    validated("parameters", [&] { cfg.validate(); });
    return cfg;
}

struct SlitGrids {
    Grid1D y, p, z;
};

SlitGrids slit_grids(Context& c, const TwoSlitConfig& cfg)
{
    const double width_t = std::sqrt(cfg.spread()) / cfg.delta;
    const double period = fringe_period(cfg);
    const double shift = std::abs(ab_shift(cfg));
    const double kick = cfg.kick ? std::abs(cfg.kick->h0 * cfg.kick->T * cfg.v0) : 0.0;
    SlitGrids g;
    if (auto y = c.grids.grid("y")) {
        g.y = *y;
    } else {
        const double half = cfg.y0 + 6 * width_t + shift;
        g.y = Grid1D(-half, half, cells_for(2 * half, period / 16));
    }
    if (auto p = c.grids.grid("p")) {
        g.p = *p;
    } else {
        const double half = 10 / cfg.delta + kick;
        const double dp = std::min({cfg.delta / cfg.t, pi / cfg.y0, 1 / cfg.delta}) / 10;
        g.p = Grid1D(-half, half, cells_for(2 * half, dp));
    }
    if (auto z = c.grids.grid("z")) {
        g.z = *z;
    } else {
        const double half = 3 * width_t;
        g.z = Grid1D(-half, half, 41);
    }
    c.grids.resolve("y", g.y);
    c.grids.resolve("p", g.p);
    c.grids.resolve("z", g.z);
    return g;
}

// uncertainty of the initial section on its own fine grid
double slit_initial_uncertainty(const TwoSlitConfig& cfg, const Grid1D& pg)
{
    const double half = cfg.y0 + 8 * cfg.delta;
    const Grid1D yg(-half, half, cells_for(2 * half, cfg.delta / 10));
    const auto m = marginals(sample_density(two_slit_initial_density(cfg), yg, pg));
    return uncertainty_product(m.P, m.Q);
}

double slit_quantum_uncertainty(const TwoSlitConfig& cfg)
{
    const double width_t = std::sqrt(cfg.spread()) / cfg.delta;
    const double half = cfg.y0 + 10 * width_t;
    const Grid1D g(-half, half, 4097);
    return amplitude_uncertainty(sample_amplitude([&](double y) { return two_slit_amplitude(cfg, y, cfg.t); }, g));
}

void write_pattern(Context& c, const ScreenPattern& pat)
{
    auto w = c.csv("pattern.csv", {"y", "z", "P"}, {"length", "length", "probability density (unnormalized)"});
    for (std::size_t i = 0; i < pat.ygrid.n; ++i)
        for (std::size_t k = 0; k < pat.zgrid.n; ++k)
            w.row({pat.ygrid[i], pat.zgrid[k], pat.at(i, k)});
    w.close();
}

void run_two_slit(Context& c)
{
    const auto cfg = slit_config(c.params, false);
    const auto g = slit_grids(c, cfg);
    c.ready();

    const auto rho_t = free_propagate(two_slit_initial_density(cfg), cfg.t, g.y, g.p);
    const auto m = marginals(rho_t);
    std::vector<double> closed(g.y.n), quantum(g.y.n);
    for (std::size_t i = 0; i < g.y.n; ++i) {
        closed[i] = two_slit_section(cfg, g.y[i]);
        quantum[i] = std::norm(two_slit_amplitude(cfg, g.y[i], cfg.t));
    }

    auto w = c.csv("two_slit.csv", {"y", "P_classical", "P_closed"}, {"length", "1/length", "1/length"});
    for (std::size_t i = 0; i < g.y.n; ++i)
        w.row({g.y[i], m.P.samples[i], closed[i]});
    w.close();
    auto o = c.csv("oracle.csv", {"y", "P_quantum"}, {"length", "1/length"});
    for (std::size_t i = 0; i < g.y.n; ++i)
        o.row({g.y[i], quantum[i]});
    o.close();

    const auto pat = two_slit_pattern(cfg, g.y, g.z);
    write_pattern(c, pat);

    c.metrics["fringe_period"] = fringe_period(cfg);
    metric_or_null(c.metrics, "fringe_period_measured",
                   [&] { return Json(fringe_metrics(g.y, closed).period); });
    metric_or_null(c.metrics, "visibility", [&] { return Json(fringe_metrics(g.y, closed).visibility); });
    c.metrics["uncertainty_t0"] = slit_initial_uncertainty(cfg, g.p);
    c.metrics["uncertainty_t"] = uncertainty_product(m.P, m.Q);
    c.metrics["uncertainty_quantum_t"] = slit_quantum_uncertainty(cfg);
    c.metrics["marginal_clipped"] = m.clipped;

    c.comparisons["classical_vs_closed_rel_l2"] = relative_l2(m.P.samples, closed);
    c.comparisons["classical_vs_closed_rel_linf"] = relative_linf(m.P.samples, closed);
    c.comparisons["closed_vs_quantum_rel_l2"] = relative_l2(closed, quantum);
}

void run_aharonov_bohm(Context& c)
{
    const auto cfg = slit_config(c.params, true);
    const auto g = slit_grids(c, cfg);
    c.ready();
    const auto& k = *cfg.kick;

    const auto direct = free_propagate(two_slit_initial_density(cfg, Lobe::direct), cfg.t, g.y, g.p);
    auto rho = magnetic_kick_propagate(two_slit_initial_density(cfg, Lobe::interference), k.h0, k.T, cfg.v0,
                                       cfg.t, g.y, g.p);
    for (std::size_t i = 0; i < rho.samples.size(); ++i)
        rho.samples[i] += direct.samples[i];
    const auto m = marginals(rho, false);

    std::vector<double> closed(g.y.n), unkicked(g.y.n);
    TwoSlitConfig plain = cfg;
    plain.kick.reset();
    for (std::size_t i = 0; i < g.y.n; ++i) {
        closed[i] = ab_section(cfg, g.y[i]);
        unkicked[i] = two_slit_section(plain, g.y[i]);
    }

    auto w = c.csv("aharonov_bohm.csv", {"y", "P_classical", "P_closed", "P_unkicked"},
                   {"length", "1/length", "1/length", "1/length"});
    for (std::size_t i = 0; i < g.y.n; ++i)
        w.row({g.y[i], m.P.samples[i], closed[i], unkicked[i]});
    w.close();

    const auto pat = ab_pattern(cfg, g.y, g.z);
    write_pattern(c, pat);

    c.metrics["fringe_period"] = fringe_period(cfg);
    c.metrics["shift_predicted"] = ab_shift(cfg);
    metric_or_null(c.metrics, "shift_measured",
                   [&] { return Json(fringe_metrics(g.y, m.P.samples, &unkicked).shift); });
    metric_or_null(c.metrics, "shift_measured_closed",
                   [&] { return Json(fringe_metrics(g.y, closed, &unkicked).shift); });
    metric_or_null(c.metrics, "shift_measured_pattern", [&] {
        const auto ref = two_slit_pattern(plain, g.y, g.z);
        return Json(fringe_metrics(pat, &ref).shift);
    });
    c.metrics["damping_grows_toward"] = pat.damping_toward;
    c.metrics["uncertainty_t0"] = slit_initial_uncertainty(cfg, g.p);
    c.metrics["uncertainty_t"] = uncertainty_product(m.P, m.Q);
    c.metrics["marginal_worst_negative"] = m.worst_negative;
    c.metrics["marginal_clipped"] = m.clipped;

    c.comparisons["classical_vs_closed_rel_l2"] = relative_l2(m.P.samples, closed);
}

// ---- relativistic splitting packet --------------------------------------------

void run_relativistic(Context& c)
{
    RelSplitConfig cfg;
    cfg.m0 = c.params.num("m0", 0.05);
    cfg.delta = c.params.num("delta", 0.01);
    validated("parameters", [&] { cfg.validate(); });
    const auto times = c.time_list({0, 5000});
    const Grid1D yg = c.grids.grid("y").value_or(Grid1D(-400, 400, 161));
    const double ph = cfg.m0 + 6 * cfg.delta;
    const Grid1D pg = c.grids.grid("p").value_or(Grid1D(-ph, ph, 81));
    c.grids.resolve("y", yg);
    c.grids.resolve("p", pg);
    c.ready();

    auto w = c.csv("relativistic_split.csv", {"t", "y", "p", "rho", "rho_int", "rho_int_closed"},
                   {"time", "length", "momentum", "1/(length momentum)", "1/(length momentum)",
                    "1/(length momentum)"});
    Json per_time = Json::array();
    std::vector<double> centroid;
    double worst_imag = 0;
    for (double t : times) {
        PhaseSpaceDensity2D full(yg, pg), inter(yg, pg), closed(yg, pg);
        const bool nonrel = cfg.m0 <= 0.2;
        const bool ultra = cfg.m0 >= 5 && t <= ultrarel_validity_time(cfg) / 10;
        double peak = 0, imag = 0;
        for (std::size_t i = 0; i < yg.n; ++i)
            for (std::size_t j = 0; j < pg.n; ++j) {
                double r1 = 0, r2 = 0;
                full(i, j) = rel_density_at(cfg, t, yg[i], pg[j], RelComponent::full, &r1);
                inter(i, j) = rel_density_at(cfg, t, yg[i], pg[j], RelComponent::interference, &r2);
                imag = std::max({imag, std::abs(r1), std::abs(r2)});
                peak = std::max(peak, std::abs(full(i, j)));
                closed(i, j) = nonrel  ? interference_nonrel_at(cfg, t, yg[i], pg[j])
                               : ultra ? interference_ultrarel_at(cfg, t, yg[i], pg[j])
                                       : std::numeric_limits<double>::quiet_NaN();
                w.row({t, yg[i], pg[j], full(i, j), inter(i, j), closed(i, j)});
            }
        if (imag > 1e-8 * peak)
            fail(ErrorKind::integration, "relativistic density imaginary residue " + std::to_string(imag / peak));
        worst_imag = std::max(worst_imag, imag / peak);

        Json entry{{"t", t}};
        const auto m = marginals(full, false);
        entry["uncertainty"] = uncertainty_product(m.P, m.Q);
        entry["marginal_worst_negative"] = m.worst_negative;
        if (nonrel || ultra)
            entry[nonrel ? "nonrel_rel_linf" : "ultrarel_rel_linf"] = relative_linf(inter.samples, closed.samples);
        double ipeak = 0;
        for (double v : inter.samples)
            ipeak = std::max(ipeak, std::abs(v));
        entry["interference_peak"] = ipeak;
        entry["m0_times_interference_peak"] = cfg.m0 * ipeak;
        per_time.push_back(entry);

        // centroid of the right-moving lobe: position density carried by p > 0
        std::vector<double> right(yg.n), row(pg.n);
        for (std::size_t i = 0; i < yg.n; ++i) {
            for (std::size_t j = 0; j < pg.n; ++j)
                row[j] = pg[j] > 0 ? full(i, j) : 0.0;
            right[i] = trapezoid(row, pg.spacing());
        }
        centroid.push_back(mean_of(field(yg, right)));
    }
    w.close();

    c.metrics["per_time"] = per_time;
    c.metrics["imag_residue_max"] = worst_imag;
    c.metrics["group_velocity"] = cfg.m0 / dispersion(cfg.m0).e;
    if (times.size() >= 2 && times.back() != times.front())
        c.metrics["lobe_velocity_measured"] = (centroid.back() - centroid.front()) / (times.back() - times.front());
    c.metrics["ultrarel_validity_time"] = ultrarel_validity_time(cfg);
    double worst = 0;
    for (const auto& e : per_time)
        if (e.contains("nonrel_rel_linf"))
            worst = std::max(worst, e["nonrel_rel_linf"].get<double>());
    if (cfg.m0 <= 0.2)
        c.comparisons["nonrel_rel_linf_max"] = worst;
}

// ---- zero-point energy ------------------------------------------------------------

void run_oscillator(Context& c)
{
    OscillatorConfig cfg;
    cfg.omega = c.params.num("omega", 1.0);
    cfg.E0 = c.params.num("E0", 0.5 * cfg.omega);
    validated("parameters", [&] { cfg.validate(); });
    const double xt = cfg.turning_point();
    const double sx = 1 / std::sqrt(cfg.omega);
    const Grid1D xg = c.grids.grid("x").value_or(Grid1D(-std::max(2 * xt, 6 * sx), std::max(2 * xt, 6 * sx), 2001));
    const double pext = std::max(8 * std::sqrt(cfg.E0), 8 * std::sqrt(cfg.omega));
    const Grid1D pg = c.grids.grid("p").value_or(Grid1D(-pext, pext, 801));
    const Grid1D og = c.grids.grid("oracle_x").value_or(Grid1D(-12 * sx, 12 * sx, 1024));
    c.grids.resolve("x", xg);
    c.grids.resolve("p", pg);
    c.grids.resolve("oracle_x", og);
    const double dtau = c.params.positive("dtau", 1e-4);
    c.ready();

    const double a = fit_stationary_parameter(cfg);
    const auto wkb = wkb_density(cfg, xg);
    const auto st = stationary_position_density(cfg, xg);
    const auto qm = quantum_ground_state_density(cfg.omega, xg);

    auto w = c.csv("oscillator_zpe.csv", {"x", "P_wkb", "P_stationary", "P_quantum"},
                   {"length", "1/length", "1/length", "1/length"});
    for (std::size_t i = 0; i < xg.n; ++i)
        w.row({xg[i], wkb.samples[i], st.samples[i], qm.samples[i]});
    w.close();

    Potential V;
    V.kind = Potential::Kind::harmonic;
    V.omega = cfg.omega;
    const auto gs = ground_state(og, V, dtau);
    const auto P_tdse = density_of(gs.psi);
    const auto P_exact = quantum_ground_state_density(cfg.omega, og);
    const auto P_st_o = stationary_position_density(cfg, og);
    auto o = c.csv("oracle.csv", {"x", "P_ground_state", "P_stationary"}, {"length", "1/length", "1/length"});
    for (std::size_t i = 0; i < og.n; ++i)
        o.row({og[i], P_tdse.samples[i], P_st_o.samples[i]});
    o.close();

    const auto rho = sample_density(stationary_phase_density(cfg), xg, pg);
    const auto m = marginals(rho);
    const double t_flow = 1.3 / cfg.omega;
    const auto moved = quadratic_propagate(stationary_phase_density(cfg), cfg.omega, false, t_flow, xg, pg);

    c.metrics["a"] = a;
    c.metrics["a_ground_state"] = 2 / cfg.omega;
    c.metrics["energy"] = stationary_energy(cfg, a, xg, pg);
    c.metrics["energy_residual"] = stationary_energy(cfg, a, xg, pg) - cfg.E0;
    c.metrics["turning_point"] = xt;
    c.metrics["beyond_turning_fraction"] = beyond_turning_fraction(cfg);
    c.metrics["beyond_turning_expected"] = std::erfc(1.0);
    c.metrics["uncertainty"] = uncertainty_product(m.P, m.Q);
    c.metrics["stationarity_rel_l2"] = relative_l2(moved.samples, rho.samples);
    c.metrics["ground_state_energy"] = gs.energy;
    c.metrics["ground_state_steps"] = gs.steps;

    c.comparisons["stationary_vs_quantum_rel_l2"] = relative_l2(st.samples, qm.samples);
    // the same density as a numerical p-marginal of the sampled exp(-aH)
    c.comparisons["marginal_vs_quantum_rel_l2"] = relative_l2(m.P.samples, qm.samples);
    c.comparisons["tdse_vs_quantum_rel_l2"] = relative_l2(P_tdse.samples, P_exact.samples);
    c.comparisons["stationary_vs_tdse_rel_l2"] = relative_l2(P_st_o.samples, P_tdse.samples);
}

// ---- infinite wall ------------------------------------------------------------------

GaussianPacket packet_params(Params& p, double x0, double p0, double delta)
{
    GaussianPacket g{p.num("x0", x0), p.num("p0", p0), p.num("delta", delta)};
    validated("parameters", [&] { g.validate(); });
    return g;
}

double packet_width_at(const GaussianPacket& g, double t)
{
    return g.delta * std::sqrt(1 + t * t / std::pow(g.delta, 4));
}

// least-squares slope of ln|g| against ln p over [lo, hi], positive p only
double loglog_slope(const ComplexField1D& g, double lo, double hi)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < g.grid.n; ++k) {
        const double p = g.grid[k];
        const double a = std::abs(g.samples[k]);
        if (p < lo || p > hi || !(a > 0))
            continue;
        const double x = std::log(p), y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 5)
        fail(ErrorKind::metric_unavailable, "fewer than 5 samples in the tail window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void run_wall(Context& c)
{
    const auto packet = packet_params(c.params, -100, 10, 10);
    validated("parameters", [&] { validate_wall_packet(packet); });
    const double t0 = std::abs(packet.x0 / packet.p0);
    const auto times = c.time_list({0, t0, 2 * t0, 5 * t0});
    const double pwin = c.params.positive("p_window", 30);
    const double V0 = c.params.nonnegative("V0_leak", 50);
    HalflineOptions opt;
    opt.dx = c.params.positive("dx", 0.0025);
    double span = 0;
    for (double t : times)
        span = std::max(span, std::max(std::abs(packet.x0), std::abs(packet.x0 + packet.p0 * t)) +
                                  12 * packet_width_at(packet, t));
    opt.span = c.params.num("span", span);
    const double tdse_dx = c.params.positive("tdse_dx", 0.05);
    c.ready();

    auto w = c.csv("wall.csv", {"t", "p", "Q_full", "Q_trad"}, {"time", "momentum", "1/momentum", "1/momentum"});
    Json per_time = Json::array();
    std::vector<ProbabilityField1D> Qs;
    for (double t : times) {
        const auto Q = halfline_momentum_density(packet, t, opt);
        const auto Qt = traditional_momentum_density(packet, t, Q.grid);
        for (std::size_t k = 0; k < Q.grid.n; ++k)
            if (std::abs(Q.grid[k]) <= pwin)
                w.row({t, Q.grid[k], Q.samples[k], Qt.samples[k]});
        const Grid1D xg(-opt.span, 0, cells_for(opt.span, opt.dx));
        const auto f = wall_amplitude(packet, t, xg);
        std::vector<double> diff(Q.grid.n);
        for (std::size_t k = 0; k < diff.size(); ++k)
            diff[k] = std::abs(Q.samples[k] - Qt.samples[k]);
        const double h = Q.grid.spacing();
        Json e{{"t", t}};
        e["uncertainty"] = uncertainty_product(density_of(f), Q);
        e["variance_full"] = std::pow(position_spread(Q), 2);
        e["variance_traditional"] = std::pow(position_spread(Qt), 2);
        e["l1_gap"] = trapezoid(diff, h) / trapezoid(Q.samples, h);
        e["P_at_wall"] = std::norm(wall_amplitude(packet, 0.0, t));
        const double dx = opt.dx;
        const cplx f0 = wall_amplitude(packet, 0.0, t);
        const cplx df = (wall_amplitude(packet, 0.0, t) - wall_amplitude(packet, -dx, t)) / dx;
        e["j_at_wall"] = std::imag(std::conj(f0) * df);
        per_time.push_back(e);
        Qs.push_back(Q);
    }
    w.close();
    c.metrics["t0"] = t0;
    c.metrics["per_time"] = per_time;
    c.metrics["span"] = opt.span;

    const double pmax = std::abs(packet.p0) + 5 / packet.delta;
    metric_or_null(c.metrics, "tail_exponent", [&] {
        return Json(loglog_slope(halfline_momentum_amplitude(packet, t0, opt), 5 * pmax, 20 * pmax));
    });
    c.metrics["tail_window"] = Json::array({5 * pmax, 20 * pmax});

    // mirror: the latest time against the first, p <-> -p (index k <-> N - k)
    if (Qs.size() >= 2) {
        const auto& a = Qs.back().samples;
        const auto& b = Qs.front().samples;
        const std::size_t N = a.size();
        std::vector<double> x, ref;
        for (std::size_t k = 1; k < N; ++k) {
            x.push_back(a[k]);
            ref.push_back(b[N - k]);
        }
        c.metrics["mirror_rel_l2"] = relative_l2(x, ref);
        c.metrics["mirror_times"] = Json::array({times.front(), times.back()});
    }
    const auto leak = wall_leak_estimate(packet, V0);
    c.metrics["leak_estimate"] = leak.value;
    c.metrics["leak_estimate_log"] = leak.log_value;
    c.metrics["leak_estimate_underflow"] = leak.underflow;

    // oracle: hard-wall TDSE on [-span, 0]
    const Grid1D og(-opt.span, 0, cells_for(opt.span, tdse_dx));
    const auto psi0 = wall_amplitude(packet, 0.0, og);
    auto o = c.csv("oracle.csv", {"t", "x", "re_psi", "im_psi", "P_tdse", "P_closed"},
                   {"time", "length", "1/sqrt(length)", "1/sqrt(length)", "1/length", "1/length"});
    Json oracle = Json::array();
    for (double t : times) {
        ComplexField1D psi = psi0;
        if (t > 0) {
            TdseConfig tc;
            tc.grid = og;
            tc.dt = t;
            tc.steps = 1;
            tc.potential.kind = Potential::Kind::hard_wall;
            psi = evolve(psi0, tc).back().psi;
        }
        const auto closed = wall_amplitude(packet, t, og);
        std::vector<double> a(og.n), b(og.n);
        for (std::size_t i = 0; i < og.n; ++i) {
            a[i] = std::norm(psi.samples[i]);
            b[i] = std::norm(closed.samples[i]);
            if (i % 4 == 0)
                o.row({t, og[i], psi.samples[i].real(), psi.samples[i].imag(), a[i], b[i]});
        }
        oracle.push_back(Json{{"t", t}, {"rel_l2", relative_l2(a, b)}, {"P_at_wall", a.back()}});
    }
    o.close();
    c.comparisons["tdse_vs_closed"] = oracle;
}

// ---- TDSE helpers for barrier scenarios ------------------------------------------

struct BarrierRun {
    Grid1D grid;
    ComplexField1D psi;
    EvolveReport report;
    double dt;
    std::size_t steps;
};

BarrierRun run_barrier_tdse(const GaussianPacket& packet, const Potential& V, const Grid1D& grid, double t,
                            double dt)
{
    BarrierRun r;
    r.grid = grid;
    r.steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / dt)));
    r.dt = t / static_cast<double>(r.steps);
    TdseConfig tc;
    tc.grid = grid;
    tc.dt = r.dt;
    tc.steps = r.steps;
    tc.potential = V;
    tc.absorbing = true;
    auto psi0 = sample_amplitude([&](double x) { return packet.amplitude(x); }, grid);
    psi0.normalize();
    r.psi = evolve(psi0, tc, &r.report).back().psi;
    return r;
}

// core region [lo, hi] widened so that 10% absorbing margins sit outside it
Grid1D absorbing_grid(double lo, double hi, double dx_target)
{
    const double core = hi - lo;
    const double full = core / 0.76;
    const double mid = 0.5 * (lo + hi);
    const std::size_t n = pow2_at_least(full / dx_target);
    return Grid1D(mid - 0.5 * full, mid + 0.5 * full, n);
}

void write_snapshot(Context& c, const ComplexField1D& psi, double t, std::size_t max_rows = 20000)
{
    auto o = c.csv("oracle.csv", {"t", "x", "re_psi", "im_psi", "P"},
                   {"time", "length", "1/sqrt(length)", "1/sqrt(length)", "1/length"});
    const std::size_t stride = std::max<std::size_t>(1, psi.grid.n / max_rows);
    for (std::size_t i = 0; i < psi.grid.n; i += stride)
        o.row({t, psi.grid[i], psi.samples[i].real(), psi.samples[i].imag(), std::norm(psi.samples[i])});
    o.close();
}

// ---- step barrier ---------------------------------------------------------------------

void run_step(Context& c)
{
    const auto packet = packet_params(c.params, -100, 10, 10);
    const double V0 = c.params.positive("V0", 50);
    const GateMode mode = gate_mode(c.params, "warn");
    const double gap = c.params.nonnegative("gap", 0);
    const double t0 = std::abs(packet.x0 / packet.p0);
    const double t = c.params.positive("t", gap > 0 ? 2 * t0 : t0);
    const double kappa = std::sqrt(2 * V0);
    const double kmax = std::abs(packet.p0) + 10 / packet.delta;
    const double dt = c.params.positive("dt", 0.05 / (V0 + 0.5 * kmax * kmax));
    const double dx_target = c.params.positive("dx", std::min(0.15 / kappa, pi / (4 * kmax)));
    const double edge_cells = c.params.nonnegative("edge_cells", 2);
    step_gate(packet, V0, mode);

    const double wt = packet_width_at(packet, t);
    // reflected packet on the left; evanescent tail, or the downstream packet when cut, on the right
    const double lo = std::min(packet.x0, -std::abs(packet.x0 + packet.p0 * t)) - 12 * wt;
    const double hi = gap > 0 ? std::max(gap + 2 * packet.delta, packet.x0 + packet.p0 * t + 12 * wt)
                              : 2 * packet.delta;
    const Grid1D grid = c.grids.grid("x").value_or(absorbing_grid(lo, hi, dx_target));
    c.grids.resolve("x", grid);
    c.ready();

    Potential V;
    V.kind = Potential::Kind::step;
    V.V0 = V0;
    V.gap = gap;
    V.edge = edge_cells * grid.spacing();
    const auto run = run_barrier_tdse(packet, V, grid, t, dt);
    write_snapshot(c, run.psi, t);
    const double dx = grid.spacing();

    c.metrics["kappa"] = kappa;
    c.metrics["expected_log_slope"] = -2 * kappa;
    c.metrics["dt"] = run.dt;
    c.metrics["steps"] = run.steps;
    c.metrics["norm_final"] = run.report.norm_final;
    c.metrics["uncertainty_final"] = amplitude_uncertainty(run.psi, 1, std::numeric_limits<double>::infinity());

    const auto kin = step_stationary_points(packet, V0, 0.0, mode);
    c.metrics["kinematics"] = Json{{"k_st", cplx_json(kin.k_st)},   {"p_st", kin.p_st},
                                   {"v_tunn", kin.v_tunn},          {"t_tunn", kin.t_tunn},
                                   {"x_tunn", kin.x_tunn},          {"t_tunn_simplified", kin.t_tunn_simplified},
                                   {"p_st_prose", kin.p_st_prose}};
    c.metrics["leak_estimate_log"] = wall_leak_estimate(packet, V0).log_value;

    if (gap == 0) {
        const double lo_fit = 0.5 / kappa, hi_fit = 3 / kappa;
        const auto prof = transmitted_profile(Snapshot{t, run.psi}, 0.0);
        c.metrics["underflow"] = prof.underflow;
        metric_or_null(c.metrics, "log_slope", [&] { return Json(log_slope_fit(prof.P, lo_fit, hi_fit).slope); });
        metric_or_null(c.metrics, "log_slope_raw", [&] { return Json(log_slope_fit(prof.P, lo_fit, hi_fit, false).slope); });
        metric_or_null(c.metrics, "log_slope_r2", [&] { return Json(log_slope_fit(prof.P, lo_fit, hi_fit, false).r2); });
        c.metrics["fit_window"] = Json::array({lo_fit, hi_fit});
        if (c.metrics["log_slope"].is_number())
            c.metrics["log_slope_rel_error"] = std::abs(c.metrics["log_slope"].get<double>() / (-2 * kappa) - 1);

        // shape under the barrier, both curves divided by their maximum on [0, 3/kappa]
        std::vector<double> xs, q, e;
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double x = grid[i];
            if (x < 0 || x > hi_fit)
                continue;
            xs.push_back(x);
            q.push_back(std::norm(run.psi.samples[i]));
            e.push_back(x > 0 ? step_transmission_estimate(packet, V0, x, t, GateMode::warn)
                              : step_transmitted_time_factor(packet, t));
        }
        q = peak_normalized(q);
        e = peak_normalized(e);
        c.comparisons["estimate_vs_tdse_shape_rel_l2"] = relative_l2(e, q);
        auto w = c.csv("step.csv", {"x", "P_tdse_shape", "P_estimate_shape"}, {"length", "1", "1"});
        for (std::size_t i = 0; i < xs.size(); ++i)
            w.row({xs[i], q[i], e[i]});
        w.close();
    } else {
        // downstream of the cut: compare with the same packet propagated freely
        std::vector<double> xs, q, f;
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double x = grid[i];
            if (x <= gap + 3 * dx || x > grid.max - 0.12 * (grid.max - grid.min))
                continue;
            xs.push_back(x);
            q.push_back(std::norm(run.psi.samples[i]));
            f.push_back(packet.density(x, t));
        }
        const double h = dx;
        const double ratio = trapezoid(q, h) / trapezoid(f, h);
        c.metrics["gap_amplitude_ratio"] = ratio;
        c.metrics["gap_expected_factor"] = std::exp(-2 * gap * kappa);
        c.comparisons["gap_shape_rel_l2"] = relative_l2(peak_normalized(q), peak_normalized(f));
        auto w = c.csv("step.csv", {"x", "P_tdse", "P_free_scaled"}, {"length", "1/length", "1/length"});
        const double s = std::exp(-2 * gap * kappa);
        for (std::size_t i = 0; i < xs.size(); ++i)
            w.row({xs[i], q[i], s * f[i]});
        w.close();
    }
}

// ---- delta barrier ----------------------------------------------------------------------

std::string width_label(double w)
{
    std::ostringstream s;
    s << w;
    return "P_tdse_w" + s.str();
}

void run_delta(Context& c)
{
    const auto packet = packet_params(c.params, -6, 1, 2);
    const double W0 = c.params.positive("W0", 10);
    const double t = c.params.positive("t", 10);
    const GateMode mode = gate_mode(c.params, "enforce");
    const auto widths = c.params.numbers("widths", {3, 2, 1.5});
    const double dt_factor = c.params.positive("dt_factor", 1);
    for (double w : widths)
        if (!(w > 0))
            c.params.bad("widths", "entries must be positive");
    delta_gate(packet, W0, mode);
    const Grid1D grid = c.grids.grid("x").value_or(Grid1D(-40, 40, 16384));
    c.grids.resolve("x", grid);
    c.ready();
    const double dx = grid.spacing();
    const double inner = grid.max - 0.1 * (grid.max - grid.min);

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < grid.n; ++i)
        if (grid[i] > 3 * dx && grid[i] <= inner)
            idx.push_back(i);
    std::vector<double> closed;
    for (auto i : idx)
        closed.push_back(delta_probability(packet, W0, grid[i], t));

    std::vector<std::vector<double>> runs;
    Json per_width = Json::array();
    std::vector<double> errs;
    for (double w : widths) {
        Potential V;
        V.kind = Potential::Kind::narrow_delta;
        V.W0 = W0;
        V.width = w * dx;
        const double sigma = w * dx;
        const auto r = run_barrier_tdse(packet, V, grid, t, dt_factor * sigma * sigma);
        std::vector<double> P;
        for (auto i : idx)
            P.push_back(std::norm(r.psi.samples[i]));
        const double err = relative_l2(P, closed);
        errs.push_back(err);
        per_width.push_back(Json{{"width_cells", w},
                                 {"sigma", sigma},
                                 {"dt", r.dt},
                                 {"steps", r.steps},
                                 {"rel_l2", err},
                                 {"uncertainty_final",
                                  amplitude_uncertainty(r.psi, 1, std::numeric_limits<double>::infinity())}});
        runs.push_back(std::move(P));
    }
    // linear extrapolation of the last two widths to zero width (diagnostic only)
    if (runs.size() >= 2) {
        const double s1 = widths[widths.size() - 2], s2 = widths.back();
        const auto& a = runs[runs.size() - 2];
        const auto& b = runs.back();
        std::vector<double> ex(b.size());
        for (std::size_t k = 0; k < ex.size(); ++k)
            ex[k] = b[k] + (b[k] - a[k]) * s2 / (s1 - s2);
        c.metrics["zero_width_extrapolated_rel_l2"] = relative_l2(ex, closed);
    }
    bool monotone = true;
    for (std::size_t k = 1; k < errs.size(); ++k)
        monotone = monotone && errs[k] < errs[k - 1];

    auto w = c.csv("delta.csv", {"x", "P_closed"}, {"length", "1/length"});
    for (std::size_t k = 0; k < idx.size(); ++k)
        w.row({grid[idx[k]], closed[k]});
    w.close();
    std::vector<std::string> cols{"x"}, units{"length"};
    for (double wd : widths) {
        cols.push_back(width_label(wd));
        units.push_back("1/length");
    }
    auto o = c.csv("oracle.csv", cols, units);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        std::vector<double> row{grid[idx[k]]};
        for (const auto& r : runs)
            row.push_back(r[k]);
        o.row(row);
    }
    o.close();

    // marginal of the closed-form transmitted density against the closed-form P
    const double xc = packet.x0 + packet.p0 * t, wt = packet_width_at(packet, t);
    const Grid1D xg(std::max(3 * dx, xc - 6 * wt), xc + 6 * wt, 121);
    const Grid1D pg(packet.p0 - 10 / packet.delta, packet.p0 + 10 / packet.delta, 1601);
    const auto dt_res = delta_transmitted_density(packet, W0, t, xg, pg, mode);
    const auto m = marginals(dt_res.rho, false);
    c.metrics["rho_marginal_rel_linf"] = relative_linf(m.P.samples, dt_res.P.samples);
    c.metrics["ridge_peak"] = packet.p0 * packet.p0 / (W0 * W0 * std::sqrt(std::pow(packet.delta, 4) + t * t));
    c.metrics["per_width"] = per_width;
    c.metrics["monotone"] = monotone;
    c.comparisons["closed_vs_tdse_rel_l2_finest"] = errs.back();
}

// ---- inverted parabola -------------------------------------------------------------------

void run_inverted(Context& c)
{
    const auto packet = packet_params(c.params, -1, 0.5, 1);
    const double w = c.params.positive("omega", 0.5);
    const double t = c.params.nonnegative("t", 4);
    const double dt = c.params.positive("dt", 1e-3);
    const Grid1D grid = c.grids.grid("x").value_or(Grid1D(-60, 60, 8192));
    c.grids.resolve("x", grid);
    c.ready();

    const double ch = std::cosh(w * t), sh = std::sinh(w * t);
    const double D = packet.delta;
    const double delta_t = D * std::sqrt(ch * ch + sh * sh / (w * w * std::pow(D, 4)));
    const double x_t = packet.x0 * ch + packet.p0 / w * sh;
    const double p_t = packet.p0 * ch + w * packet.x0 * sh;
    const double sp_t = ch / D + w * D * sh;

    const DensityFn rho0 = [&](double x, double p) { return packet.wigner(x, p); };
    const Grid1D pg(p_t - 10 * sp_t, p_t + 10 * sp_t, 2001);
    const auto P_cl = position_marginal(
        [&](double x, double p) {
            const auto b = backtrace_quadratic(x, p, w, true, t);
            return rho0(b.x, b.p);
        },
        grid, pg);
    std::vector<double> closed(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        closed[i] = std::exp(-std::pow(grid[i] - x_t, 2) / (delta_t * delta_t)) / (std::sqrt(pi) * delta_t);

    Potential V;
    V.kind = Potential::Kind::inverted_harmonic;
    V.omega = w;
    auto psi0 = sample_amplitude([&](double x) { return packet.amplitude(x); }, grid);
    psi0.normalize();
    std::vector<double> P_tdse(grid.n);
    EvolveReport rep;
    if (t > 0) {
        TdseConfig tc;
        tc.grid = grid;
        tc.steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / dt)));
        tc.dt = t / static_cast<double>(tc.steps);
        tc.potential = V;
        const auto snap = evolve(psi0, tc, &rep).back();
        P_tdse = density_of(snap.psi).samples;
    } else {
        P_tdse = density_of(psi0).samples;
    }

    auto out = c.csv("inverted_parabola.csv", {"x", "P_classical", "P_closed"}, {"length", "1/length", "1/length"});
    auto o = c.csv("oracle.csv", {"x", "P_tdse"}, {"length", "1/length"});
    for (std::size_t i = 0; i < grid.n; ++i) {
        out.row({grid[i], P_cl[i], closed[i]});
        o.row({grid[i], P_tdse[i]});
    }
    out.close();
    o.close();

    const auto Pc = field(grid, P_cl);
    const double mean = mean_of(Pc);
    const double width = std::sqrt(2.0) * position_spread(Pc);
    c.metrics["delta_t"] = delta_t;
    c.metrics["x_t"] = x_t;
    c.metrics["delta_t_measured"] = width;
    c.metrics["x_t_measured"] = mean;
    c.metrics["delta_t_rel_error"] = std::abs(width / delta_t - 1);
    c.metrics["x_t_abs_error"] = std::abs(mean - x_t);

    // uncertainty from a local phase-space grid
    const Grid1D xl(x_t - 10 * delta_t, x_t + 10 * delta_t, 801);
    const Grid1D pl(p_t - 10 * sp_t, p_t + 10 * sp_t, 801);
    const auto m = marginals(quadratic_propagate(rho0, w, true, t, xl, pl));
    c.metrics["uncertainty"] = uncertainty_product(m.P, m.Q);
    c.metrics["norm_drift"] = rep.norm_drift;

    c.comparisons["classical_vs_closed_rel_l2"] = relative_l2(P_cl, closed);
    c.comparisons["classical_vs_tdse_rel_l2"] = relative_l2(P_cl, P_tdse);
}

// ---- catalog ----------------------------------------------------------------------------

struct Entry {
    ScenarioInfo info;
    void (*run)(Context&);
};

const std::vector<Entry>& entries()
{
    static const std::vector<Entry> list{
        {{"two_slit", "two-slit interference by classical free flow of the three-lobe density",
          {"y0=1000", "delta=100", "v0=1", "X=1e5", "t=1e5"},
          {"y0 >= 3 delta (slits must not overlap)"}},
         run_two_slit},
        {{"aharonov_bohm", "magnetic kick of the interference lobe and the shifted fringe pattern",
          {"y0=1000", "delta=100", "v0=1", "X=1e5", "t=1e5", "h0=2e-4", "T=1000"},
          {"y0 >= 3 delta", "|h0 T| <= 0.1 (warning)", "t >= T"}},
         run_aharonov_bohm},
        {{"relativistic_split", "relativistic splitting packet and finite-speed interference formation",
          {"m0=0.05", "delta=0.01", "times=[0,5000]"},
          {"m0 >= 5 delta", "non-relativistic form: m0 <= 0.2", "ultrarelativistic form: m0 >= 5, t <= m0^4/delta^3/10"}},
         run_relativistic},
        {{"oscillator_zpe", "zero-point energy from a stationary exponential phase-space density",
          {"omega=1", "E0=omega/2"},
          {"omega > 0", "E0 > 0", ">= 10 grid points between the turning points"}},
         run_oscillator},
        {{"wall", "momentum widening of a packet reflected by an infinite wall",
          {"x0=-100", "p0=10", "delta=10", "times=[0,t0,2t0,5t0]"},
          {"x0 < 0", "|x0| >= 3 delta"}},
         run_wall},
        {{"step", "tunneling under a step barrier: log-slope, shape and stationary-point kinematics",
          {"x0=-100", "p0=10", "delta=10", "V0=50", "gap=0", "gate=warn"},
          {"sqrt(2 V0) >= 5 |p0|"}},
         run_step},
        {{"delta", "transmission through a delta barrier against a narrow-Gaussian TDSE",
          {"x0=-6", "p0=1", "delta=2", "W0=10", "t=10", "widths=[3,2,1.5]"},
          {"W0 >= 5 |p0|"}},
         run_delta},
        {{"inverted_parabola", "packet on an inverted parabolic potential, classical flow against TDSE",
          {"x0=-1", "p0=0.5", "delta=1", "omega=0.5", "t=4"},
          {"omega t <= 50"}},
         run_inverted},
    };
    return list;
}

} // namespace

const std::vector<ScenarioInfo>& scenario_catalog()
{
    static const std::vector<ScenarioInfo> infos = [] {
        std::vector<ScenarioInfo> v;
        for (const auto& e : entries())
            v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::string catalog_table()
{
    std::ostringstream s;
    for (const auto& e : scenario_catalog()) {
        s << e.name << "\n  " << e.topic << "\n  parameters:";
        for (const auto& p : e.parameters)
            s << ' ' << p;
        s << "\n  gates:";
        for (std::size_t i = 0; i < e.gates.size(); ++i)
            s << (i ? "; " : " ") << e.gates[i];
        s << '\n';
    }
    return s.str();
}

Json catalog_json()
{
    Json arr = Json::array();
    for (const auto& e : scenario_catalog())
        arr.push_back(Json{{"name", e.name}, {"topic", e.topic}, {"parameters", e.parameters}, {"gates", e.gates}});
    return arr;
}

Json run_scenario(const Json& config, const fs::path& out_dir)
{
    if (!config.is_object())
        fail(ErrorKind::config, "config must be a JSON object");
    for (auto it = config.begin(); it != config.end(); ++it) {
        static const std::set<std::string> top{"scenario", "parameters", "grids", "times", "output"};
        if (!top.count(it.key()))
            fail(ErrorKind::config, it.key() + ": unknown key (accepted: grids, output, parameters, scenario, times)");
    }
    if (!config.contains("scenario") || !config["scenario"].is_string())
        fail(ErrorKind::config, "scenario: missing or not a string");
    const std::string name = config["scenario"].get<std::string>();
    const Entry* entry = nullptr;
    for (const auto& e : entries())
        if (e.info.name == name)
            entry = &e;
    if (!entry)
        fail(ErrorKind::config, "scenario: unknown scenario '" + name + "' (see 'list')");
    if (config.contains("output") && !config["output"].is_string())
        fail(ErrorKind::config, "output: must be a string");

    Context c{Params(config.contains("parameters") ? &config["parameters"] : nullptr, "parameters"),
              Params(config.contains("grids") ? &config["grids"] : nullptr, "grids")};
    c.times = config.contains("times") ? &config["times"] : nullptr;
    c.dir = out_dir;
    fs::create_directories(out_dir);
    drain_warnings();

    entry->run(c);
    c.ready();

    Json m;
    m["artifact"] = "phaseflow";
    m["version"] = artifact_version;
    m["scenario"] = name;
    m["config"] = config;
    m["resolved"] = Json{{"parameters", c.params.resolved()}, {"grids", c.grids.resolved()}};
    m["units"] = "hbar = m = 1 (c = 1 for relativistic_split)";
    for (auto it = c.metrics.begin(); it != c.metrics.end(); ++it)
        m[it.key()] = it.value();
    m["comparisons"] = c.comparisons;
    Json warnings = Json::array();
    std::set<std::string> seen;
    for (const auto& w : drain_warnings())
        if (seen.insert(w).second)
            warnings.push_back(w);
    m["warnings"] = warnings;
    Json files = Json::array();
    for (const auto& f : c.files)
        files.push_back(Json{{"name", f},
                             {"sha256", sha256_file(out_dir / f)},
                             {"bytes", static_cast<std::uint64_t>(fs::file_size(out_dir / f))}});
    m["files"] = files;

    std::ofstream out(out_dir / "manifest.json");
    out << m.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("cannot write manifest.json in " + out_dir.string());
    return m;
}

int exit_code_for(const std::exception& e)
{
    if (const auto* err = dynamic_cast<const Error*>(&e))
        return err->is_config() ? 2 : 3;
    if (dynamic_cast<const nlohmann::json::exception*>(&e))
        return 2;
    return 3;
}

} // namespace phaseflow
