#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "tclevy/experiment.hpp"
#include "tclevy/sde_problem.hpp"
#include "tclevy/time_change.hpp"

namespace tclevy {

/// Shortest round-trip-safe text ("%.17g").
std::string format_number(double value);

/// "delta,error,stderr" rows, then "# key=value" metadata lines.
std::string error_table_csv(const ErrorTable& table);
/// Two whitespace-separated columns (log2_delta log2_error), gnuplot-ready.
std::string error_table_log2(const ErrorTable& table);

/// "n,t_n,D_t_n" for n = 0..N+1.
std::string subordinator_csv(const SubordinatorPath& path);
/// "t,E_delta_t" at t = kT/samples, k = 0..samples.
std::string inverse_csv(const InverseTimeChange& itc, std::size_t samples);
/// "n,t_n,Y_n" (one Y column per state component when d > 1).
std::string original_path_csv(const DiscretePath& path);
/// "t,X_delta_t" at t = kT/samples, k = 0..samples.
std::string time_changed_csv(const DiscretePath& path, const InverseTimeChange& itc, std::size_t samples);

/// Writes to "<path>.tmp" and renames over `path`; nothing is left behind on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tclevy
