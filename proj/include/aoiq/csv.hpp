#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aoiq {

enum class RowSource { Analytic, Sim };

struct ResultRow {
    std::string scheme;  // "mg11" | "mg12star"
    std::string dist;    // distribution spec string
    double lambda = 0.0;
    double eps_i = 0.0;
    double eps_b = 0.0;
    double avg_aoi = 0.0;
    double avg_peak_aoi = 0.0;
    RowSource source = RowSource::Analytic;
    std::optional<double> se_aoi;
    std::optional<double> se_peak;
};

inline constexpr std::string_view kResultHeader =
    "scheme,dist,lambda,eps_i,eps_b,avg_aoi,avg_peak_aoi,source,se_aoi,se_peak";

// 12 significant digits, locale-independent ('.' decimal point always).
std::string format_double(double v);

std::string rows_to_csv(const std::vector<ResultRow>& rows);

// Writes rows (exact header above, trailing newline). Throws IoError on an
// unwritable path and NumericalError on non-finite numeric fields.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

// RFC4180-style reader for files produced by emit_csv (tests, round-trips).
std::vector<ResultRow> parse_result_csv(const std::string& path);

void write_text_file(const std::string& path, std::string_view content);

}  // namespace aoiq
