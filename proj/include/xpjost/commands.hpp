#pragma once

#include <exception>
#include <optional>
#include <string>
#include <utility>

namespace xpjost {

/// Knobs shared by the command-line subcommands. Unset values take
/// per-subcommand defaults.
struct RunConfig {
    std::string subcommand;  // eval | spectrum | zeta | fz | oracle
    std::string model;       // file path or inline JSON
    std::string out;         // empty: standard output
    std::optional<std::pair<double, double>> range;
    std::optional<double> mesh;
    std::optional<double> window;
    std::optional<int> series_m;
    std::optional<int> grid_n;
    std::optional<double> length;
};

/// "a:b" -> (a, b). Throws ConfigError on malformed input or a > b.
std::pair<double, double> parse_range(const std::string& text);

/// "# generated <ISO-8601 UTC>"; honours SOURCE_DATE_EPOCH for reproducible output.
std::string timestamp_line();

/// CSV: E,re_F,im_F,abs_F.
std::string cmd_eval(const RunConfig& cfg);

/// JSON SpectrumReport with states flagged "localized" / "delocalized".
std::string cmd_spectrum(const RunConfig& cfg);

/// CSV: t,theta,Z,re_zeta,im_zeta,n_smooth,re_zeta_H,im_zeta_H (ζ_H at s = 1/2 − it).
std::string cmd_zeta(const RunConfig& cfg);

/// CSV: E,re_FZ,im_FZ_integral,im_FZ_series.
std::string cmd_fz(const RunConfig& cfg);

/// JSON: residuals, localization diagnostics and a grid-doubling table.
std::string cmd_oracle(const RunConfig& cfg);

/// Dispatches on cfg.subcommand.
std::string run_command(const RunConfig& cfg);

/// 0 success, 2 configuration or domain error, 3 numerical failure.
int exit_code_for(const std::exception& e);

}  // namespace xpjost
