#include "aoiq/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "aoiq/errors.hpp"

namespace aoiq {

namespace {

double parse_number(std::string_view token, std::string_view whole) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw UsageError("bad number '" + std::string(token) + "' in grid '" +
                         std::string(whole) + "'");
    }
    return v;
}

long parse_count(std::string_view token, std::string_view whole) {
    long n = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (ec != std::errc() || ptr != token.data() + token.size() || n < 1) {
        throw UsageError("bad grid count '" + std::string(token) + "' in grid '" +
                         std::string(whole) + "'");
    }
    return n;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos
                                                                   : next - pos));
        if (next == std::string_view::npos) return out;
        pos = next + 1;
    }
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
    bool log_spaced = false;
    std::string_view body = text;
    if (body.substr(0, 4) == "log:") {
        log_spaced = true;
        body = body.substr(4);
    }
    const auto parts = split(body, ':');
    GridSpec g;
    if (parts.size() == 1 && !log_spaced) {
        g.values.push_back(parse_number(parts[0], text));
        return g;
    }
    if (parts.size() != 3) {
        throw UsageError("bad grid '" + std::string(text) +
                         "' (expected value, start:stop:count or log:start:stop:count)");
    }
    const double a = parse_number(parts[0], text);
    const double b = parse_number(parts[1], text);
    const long n = parse_count(parts[2], text);
    if (n == 1) {
        if (a != b) {
            throw UsageError("grid '" + std::string(text) + "' has count 1 but start != stop");
        }
        g.values.push_back(a);
        return g;
    }
    if (log_spaced && (!(a > 0.0) || !(b > 0.0))) {
        throw UsageError("log grid '" + std::string(text) + "' requires positive bounds");
    }
    g.values.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        if (log_spaced) {
            g.values.push_back(a * std::pow(b / a, f));
        } else {
            g.values.push_back(a + (b - a) * f);
        }
    }
    g.values.back() = b;  // inclusive endpoint, exact
    return g;
}

}  // namespace aoiq
