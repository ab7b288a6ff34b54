#include "tclevy/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "tclevy/error.hpp"
#include "tclevy/theta_solver.hpp"

namespace tclevy {
namespace {

const char* const kModule = "csv";

std::string state_columns(const State& y) {
    std::string out;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (i > 0) out += ',';
        out += format_number(y[i]);
    }
    return out;
}

std::string state_header(const char* name, Eigen::Index dim) {
    if (dim == 1) return name;
    std::string out;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (i > 0) out += ',';
        out += std::string(name) + '_' + std::to_string(i);
    }
    return out;
}

double sample_time(double horizon, std::size_t k, std::size_t samples) {
    return k == samples ? horizon : horizon * static_cast<double>(k) / static_cast<double>(samples);
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string error_table_csv(const ErrorTable& table) {
    std::string out = "delta,error,stderr\n";
    for (const ErrorRow& r : table.rows) {
        out += format_number(r.delta) + ',' + format_number(r.error) + ',' + format_number(r.std_error) + '\n';
    }
    out += std::string("# kind=") + (table.kind == ErrorKind::strong ? "strong" : "weak") + '\n';
    out += "# theta=" + format_number(table.theta) + '\n';
    out += "# alpha=" + format_number(table.alpha) + '\n';
    out += "# n_paths=" + std::to_string(table.n_paths) + '\n';
    out += "# ref_delta=" + format_number(table.ref_delta) + '\n';
    out += "# seed=" + std::to_string(table.seed) + '\n';
    out += "# slope=" + (table.fitted ? format_number(table.slope) : std::string("nan")) + '\n';
    out += "# intercept=" + (table.fitted ? format_number(table.intercept) : std::string("nan")) + '\n';
    return out;
}

std::string error_table_log2(const ErrorTable& table) {
    std::string out = "# log2_delta log2_error\n";
    for (const ErrorRow& r : table.rows) {
        if (!(r.error > 0.0)) continue;
        out += format_number(std::log2(r.delta)) + ' ' + format_number(std::log2(r.error)) + '\n';
    }
    return out;
}

std::string subordinator_csv(const SubordinatorPath& path) {
    std::string out = "n,t_n,D_t_n\n";
    const auto& v = path.values();
    for (std::size_t n = 0; n <= path.crossing_index() + 1; ++n) {
        out += std::to_string(n) + ',' + format_number(static_cast<double>(n) * path.delta()) + ',' +
               format_number(v[n]) + '\n';
    }
    return out;
}

std::string inverse_csv(const InverseTimeChange& itc, std::size_t samples) {
    if (samples == 0) throw DomainError(kModule, "need at least one sample interval");
    std::string out = "t,E_delta_t\n";
    for (std::size_t k = 0; k <= samples; ++k) {
        const double t = sample_time(itc.horizon(), k, samples);
        out += format_number(t) + ',' + format_number(itc(t)) + '\n';
    }
    return out;
}

std::string original_path_csv(const DiscretePath& path) {
    const Eigen::Index dim = path.values.empty() ? 1 : path.values.front().size();
    std::string out = "n,t_n," + state_header("Y_n", dim) + '\n';
    for (std::size_t n = 0; n < path.values.size(); ++n) {
        out += std::to_string(n) + ',' + format_number(static_cast<double>(n) * path.delta) + ',' +
               state_columns(path.values[n]) + '\n';
    }
    return out;
}

std::string time_changed_csv(const DiscretePath& path, const InverseTimeChange& itc, std::size_t samples) {
    if (samples == 0) throw DomainError(kModule, "need at least one sample interval");
    const Eigen::Index dim = path.values.empty() ? 1 : path.values.front().size();
    std::string out = "t," + state_header("X_delta_t", dim) + '\n';
    for (std::size_t k = 0; k <= samples; ++k) {
        const double t = sample_time(itc.horizon(), k, samples);
        out += format_number(t) + ',' + state_columns(compose_time_changed(path, itc, t)) + '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw Error(kModule, "cannot open " + tmp.string() + " for writing");
        file.write(content.data(), static_cast<std::streamsize>(content.size()));
        file.flush();
        if (!file) {
            file.close();
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw Error(kModule, "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw Error(kModule, "cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

}  // namespace tclevy
