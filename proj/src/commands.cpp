#include "xpjost/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <json.hpp>
#include <sstream>

#include "xpjost/errors.hpp"
#include "xpjost/hilbert.hpp"
#include "xpjost/model_config.hpp"
#include "xpjost/oracle.hpp"
#include "xpjost/specialfn.hpp"
#include "xpjost/spectrum.hpp"

namespace xpjost {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// Points lo, lo + mesh, ... up to hi; empty when lo == hi.
std::vector<double> grid(const RunConfig& cfg, std::pair<double, double> fallback, double default_mesh) {
    const auto [lo, hi] = cfg.range.value_or(fallback);
    const double mesh = cfg.mesh.value_or(default_mesh);
    if (!(mesh > 0.0) || !std::isfinite(mesh)) throw ConfigError("--mesh must be positive");
    if (lo > hi) throw ConfigError("--range requires a <= b");
    std::vector<double> out;
    if (lo == hi) return out;
    const long long n = static_cast<long long>(std::floor((hi - lo) / mesh + 1e-9));
    if (n > 10000000) throw ConfigError("--range / --mesh gives more than 1e7 points");
    for (long long j = 0; j <= n; ++j) out.push_back(lo + j * mesh);
    return out;
}

PVWindow window(const RunConfig& cfg) {
    PVWindow w;
    if (cfg.window) w.d = *cfg.window;
    validate(w);
    return w;
}

ModelSpec model(const RunConfig& cfg) {
    if (cfg.model.empty()) throw ConfigError("--model is required for '" + cfg.subcommand + "'");
    ModelSpec m = load_model(cfg.model);
    if (cfg.length) {
        if (!(*cfg.length > 0.0) || !std::isfinite(*cfg.length)) throw ConfigError("--length must be positive");
        if (!std::isinf(m.L) && std::abs(m.L - *cfg.length) > 1e-12 * m.L)
            throw ConfigError("--length " + fmt(*cfg.length) + " contradicts the model's L = " + fmt(m.L));
        m.L = *cfg.length;
    }
    validate(m);
    return m;
}

json level_json(const Level& l, const char* state) {
    return {{"E", l.E}, {"residual", l.residual}, {"state", state}};
}

// Piecewise-exponential models have closed forms valid off the real axis.
bool closed_form(const ModelSpec& m) {
    return pieces(m.a, m.L).has_value() && (m.kind == ModelKind::M1 || pieces(m.b, m.L).has_value());
}

}  // namespace

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("--range expects a:b, got '" + text + "'");
    try {
        std::size_t used_a = 0, used_b = 0;
        const std::string sa = text.substr(0, colon), sb = text.substr(colon + 1);
        const double a = std::stod(sa, &used_a), b = std::stod(sb, &used_b);
        if (used_a != sa.size() || used_b != sb.size() || !std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("trailing characters");
        if (a > b) throw ConfigError("--range requires a <= b, got '" + text + "'");
        return {a, b};
    } catch (const std::logic_error&) {
        throw ConfigError("--range expects two numbers a:b, got '" + text + "'");
    }
}

std::string timestamp_line() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = static_cast<std::time_t>(std::atoll(epoch));
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[64];
    std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ\n", &utc);
    return buf;
}

std::string cmd_eval(const RunConfig& cfg) {
    const ModelSpec m = model(cfg);
    const auto E = grid(cfg, {0.0, 20.0}, 0.01);
    std::ostringstream os;
    os << timestamp_line() << "E,re_F,im_F,abs_F\n";
    if (E.empty()) return os.str();
    const JostEvaluator F(m, window(cfg));
    for (double e : E) {
        const cplx f = F(e);
        os << fmt(e) << ',' << fmt(f.real()) << ',' << fmt(f.imag()) << ',' << fmt(std::abs(f)) << '\n';
    }
    return os.str();
}

std::string cmd_spectrum(const RunConfig& cfg) {
    const ModelSpec m = model(cfg);
    const auto [lo, hi] = cfg.range.value_or(std::pair{-20.0, 20.0});
    if (!(lo < hi)) throw ConfigError("spectrum: --range requires a < b");
    json j;
    j["model"] = json::parse(model_to_json(m));
    j["range"] = {lo, hi};
    j["scattering_levels"] = json::array();
    j["bound_states"] = json::array();
    j["resonances"] = json::array();
    if (!std::isinf(m.L)) {
        const SpectrumReport rep = finite_spectrum(m, m.L, lo, hi, cfg.mesh.value_or(0.0));
        j["L"] = m.L;
        for (const auto& l : rep.scattering_levels) j["scattering_levels"].push_back(level_json(l, "delocalized"));
        for (const auto& l : rep.bound_states) j["bound_states"].push_back(level_json(l, "localized"));
        j["upper_zero_count"] = nullptr;
    } else {
        j["L"] = "infinite";
        for (const auto& l : bound_states(m, lo, hi, cfg.mesh.value_or(0.01)))
            j["bound_states"].push_back(level_json(l, "localized"));
        if (closed_form(m)) {
            for (const auto& r : resonances(m, {lo, hi, -10.0, -0.01}))
                j["resonances"].push_back(
                    {{"re", r.E.real()}, {"im", r.E.imag()}, {"residual", r.residual}, {"state", "resonance"}});
            j["upper_zero_count"] = upper_halfplane_zero_count(m, {lo, hi, 0.01, 10.0});
        } else {
            j["upper_zero_count"] = nullptr;
        }
    }
    return j.dump(2) + "\n";
}

std::string cmd_zeta(const RunConfig& cfg) {
    const auto T = grid(cfg, {0.0, 50.0}, 0.1);
    std::ostringstream os;
    os << timestamp_line() << "t,theta,Z,re_zeta,im_zeta,n_smooth,re_zeta_H,im_zeta_H\n";
    for (double t : T) {
        const CountingPoint p = counting_point(t);
        const cplx zh = zeta_hardy(cplx(0.5, -t));
        os << fmt(t) << ',' << fmt(p.theta) << ',' << fmt(p.Z) << ',' << fmt(p.zeta.real()) << ','
           << fmt(p.zeta.imag()) << ',' << fmt(p.n_smooth) << ',' << fmt(zh.real()) << ',' << fmt(zh.imag()) << '\n';
    }
    return os.str();
}

std::string cmd_fz(const RunConfig& cfg) {
    const auto E = grid(cfg, {10.0, 50.0}, 2.0);
    const int M = cfg.series_m.value_or(5000);
    std::ostringstream os;
    os << timestamp_line() << "E,re_FZ,im_FZ_integral,im_FZ_series\n";
    if (E.empty()) return os.str();
    const FZIntegral fz(window(cfg));
    for (double e : E) {
        const cplx integral = fz(e);
        const cplx series = FZ_series(e, M);
        os << fmt(e) << ',' << fmt(integral.real()) << ',' << fmt(integral.imag()) << ',' << fmt(series.imag())
           << '\n';
    }
    return os.str();
}

std::string cmd_oracle(const RunConfig& cfg) {
    const ModelSpec m = model(cfg);
    if (std::isinf(m.L)) throw ConfigError("oracle: needs a finite L (model \"L\" or --length)");
    const int n = cfg.grid_n.value_or(256);
    if (n < 16) throw ConfigError("--grid-n must be at least 16");
    constexpr int kLevels = 10;
    const CrossCheckReport rep = cross_check(m, m.L, n, kLevels);
    json j;
    j["model"] = json::parse(model_to_json(m));
    j["L"] = m.L;
    j["n"] = n;
    j["levels"] = json::array();
    for (std::size_t i = 0; i < rep.energies.size(); ++i)
        j["levels"].push_back({{"E", rep.energies[i]},
                               {"residual", rep.residuals[i]},
                               {"localization", rep.localization[i]},
                               {"state", rep.localization[i] < 0.05 ? "localized" : "delocalized"}});
    j["max_residual"] = rep.max_residual;
    j["grid_convergence"] = json::array();
    const CrossCheckReport coarse = cross_check(m, m.L, std::max(2, n / 2), kLevels);
    const double ratio = rep.max_residual > 0.0 ? coarse.max_residual / rep.max_residual : 0.0;
    j["grid_convergence"].push_back({{"n", coarse.n}, {"max_residual", coarse.max_residual}, {"ratio", 0.0}});
    j["grid_convergence"].push_back({{"n", n}, {"max_residual", rep.max_residual}, {"ratio", ratio}});
    return j.dump(2) + "\n";
}

std::string run_command(const RunConfig& cfg) {
    if (cfg.subcommand == "eval") return cmd_eval(cfg);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg);
    if (cfg.subcommand == "zeta") return cmd_zeta(cfg);
    if (cfg.subcommand == "fz") return cmd_fz(cfg);
    if (cfg.subcommand == "oracle") return cmd_oracle(cfg);
    throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return 2;
    return 3;
}

}  // namespace xpjost
