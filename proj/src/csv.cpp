#include "aoiq/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aoiq/errors.hpp"

namespace aoiq {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void check_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw NumericalError(std::string("non-finite value in CSV field '") + field + "'");
    }
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::string out{kResultHeader};
    out += '\n';
    for (const ResultRow& r : rows) {
        check_finite(r.lambda, "lambda");
        check_finite(r.eps_i, "eps_i");
        check_finite(r.eps_b, "eps_b");
        check_finite(r.avg_aoi, "avg_aoi");
        check_finite(r.avg_peak_aoi, "avg_peak_aoi");
        out += csv_field(r.scheme);
        out += ',';
        out += csv_field(r.dist);
        out += ',';
        out += format_double(r.lambda);
        out += ',';
        out += format_double(r.eps_i);
        out += ',';
        out += format_double(r.eps_b);
        out += ',';
        out += format_double(r.avg_aoi);
        out += ',';
        out += format_double(r.avg_peak_aoi);
        out += ',';
        out += r.source == RowSource::Analytic ? "analytic" : "sim";
        out += ',';
        if (r.se_aoi) out += format_double(*r.se_aoi);
        out += ',';
        if (r.se_peak) out += format_double(*r.se_peak);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed for '" + path + "'");
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    write_text_file(path, rows_to_csv(rows));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double to_double(const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError("bad numeric CSV field '" + s + "'");
    }
    return v;
}

}  // namespace

std::vector<ResultRow> parse_result_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(f, line)) throw IoError("empty CSV '" + path + "'");
    if (line != kResultHeader) throw IoError("unexpected CSV header in '" + path + "'");
    std::vector<ResultRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 10) throw IoError("bad CSV row in '" + path + "'");
        ResultRow r;
        r.scheme = fields[0];
        r.dist = fields[1];
        r.lambda = to_double(fields[2]);
        r.eps_i = to_double(fields[3]);
        r.eps_b = to_double(fields[4]);
        r.avg_aoi = to_double(fields[5]);
        r.avg_peak_aoi = to_double(fields[6]);
        r.source = fields[7] == "sim" ? RowSource::Sim : RowSource::Analytic;
        if (!fields[8].empty()) r.se_aoi = to_double(fields[8]);
        if (!fields[9].empty()) r.se_peak = to_double(fields[9]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace aoiq
