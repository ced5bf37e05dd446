#include "aoiq/service_distribution.hpp"

#include <charconv>
#include <cmath>

#include "aoiq/errors.hpp"

namespace aoiq {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw UsageError(std::string("distribution parameter '") + field +
                         "' must be finite and > 0, got " + std::to_string(v));
    }
}

std::string fmt_shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

ServiceDistribution ServiceDistribution::gamma(double k, double mu) {
    require_positive(k, "k");
    require_positive(mu, "mu");
    return {DistKind::Gamma, k, mu};
}

ServiceDistribution ServiceDistribution::inverse_gaussian(double alpha, double mu) {
    require_positive(alpha, "alpha");
    require_positive(mu, "mu");
    return {DistKind::InverseGaussian, alpha, mu};
}

ServiceDistribution ServiceDistribution::exponential(double mu) {
    require_positive(mu, "mu");
    return {DistKind::Exponential, 0.0, mu};
}

ServiceDistribution ServiceDistribution::deterministic(double c) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
        throw UsageError("distribution parameter 'c' must be finite and >= 0, got " +
                         std::to_string(c));
    }
    return {DistKind::Deterministic, c, 0.0};
}

double ServiceDistribution::mean() const {
    switch (kind_) {
        case DistKind::Deterministic: return a_;
        default: return 1.0 / b_;
    }
}

double ServiceDistribution::second_moment() const {
    switch (kind_) {
        case DistKind::Gamma: return (a_ + 1.0) / (a_ * b_ * b_);
        case DistKind::InverseGaussian: return 1.0 / (a_ * b_ * b_ * b_) + 1.0 / (b_ * b_);
        case DistKind::Exponential: return 2.0 / (b_ * b_);
        case DistKind::Deterministic: return a_ * a_;
    }
    return 0.0;
}

MgfTriple ServiceDistribution::mgf_triple(double gamma) const {
    if (!(gamma >= 0.0)) throw UsageError("mgf_triple requires gamma >= 0");
    switch (kind_) {
        case DistKind::Gamma: {
            const double k = a_, mu = b_;
            const double base = 1.0 + gamma / (k * mu);
            const double m0 = std::pow(base, -k);
            const double m1 = (1.0 / mu) * std::pow(base, -k - 1.0);
            const double m2 = ((k + 1.0) / (k * mu * mu)) * std::pow(base, -k - 2.0);
            return {m0, m1, m2};
        }
        case DistKind::InverseGaussian: {
            const double alpha = a_, mu = b_;
            const double t = 2.0 * gamma / (alpha * mu * mu);
            const double w = std::sqrt(1.0 + t);
            // alpha*mu*(1 - w) evaluated as -alpha*mu*t/(1+w): no cancellation
            // and the exponent stays representable for large alpha*mu.
            const double expo = -alpha * mu * t / (1.0 + w);
            const double m0 = std::exp(expo);
            const double m1 = m0 / (mu * w);
            const double m2 = m1 / (mu * w) + m0 / (alpha * mu * mu * mu * w * w * w);
            return {m0, m1, m2};
        }
        case DistKind::Exponential: {
            const double mu = b_;
            const double m0 = mu / (mu + gamma);
            return {m0, mu / ((mu + gamma) * (mu + gamma)),
                    2.0 * mu / ((mu + gamma) * (mu + gamma) * (mu + gamma))};
        }
        case DistKind::Deterministic: {
            const double e = std::exp(-gamma * a_);
            return {e, e * a_, e * a_ * a_};
        }
    }
    return {};
}

ResidualStats ServiceDistribution::residual_stats(double gamma) const {
    if (!(gamma > 0.0)) throw UsageError("residual_stats requires gamma > 0");
    const double m = mean();
    if (!(m > 0.0)) throw UsageError("residual_stats requires E[S] > 0");
    const MgfTriple t = mgf_triple(gamma);
    // 1 - mgf from the log-domain exponent, accurate down to gamma -> 0.
    double one_minus = 0.0;
    switch (kind_) {
        case DistKind::Gamma:
            one_minus = -std::expm1(-a_ * std::log1p(gamma / (a_ * b_)));
            break;
        case DistKind::InverseGaussian: {
            const double tt = 2.0 * gamma / (a_ * b_ * b_);
            one_minus = -std::expm1(-a_ * b_ * tt / (1.0 + std::sqrt(1.0 + tt)));
            break;
        }
        case DistKind::Exponential: one_minus = gamma / (b_ + gamma); break;
        case DistKind::Deterministic: one_minus = -std::expm1(-gamma * a_); break;
    }
    ResidualStats rs;
    rs.mgf_r = one_minus / (gamma * m);
    rs.mgf_r1 = (one_minus - gamma * t.mgf1) / (gamma * gamma * m);
    rs.mean_r = second_moment() / (2.0 * m);
    return rs;
}

double ServiceDistribution::sample(Rng& rng) const {
    switch (kind_) {
        case DistKind::Gamma: return rng.gamma(a_, a_ * b_);
        case DistKind::InverseGaussian: return rng.inverse_gaussian(1.0 / b_, a_);
        case DistKind::Exponential: return rng.exponential(b_);
        case DistKind::Deterministic: return a_;
    }
    return 0.0;
}

std::string ServiceDistribution::spec_string() const {
    switch (kind_) {
        case DistKind::Gamma:
            return "gamma:k=" + fmt_shortest(a_) + ",mu=" + fmt_shortest(b_);
        case DistKind::InverseGaussian:
            return "invgauss:alpha=" + fmt_shortest(a_) + ",mu=" + fmt_shortest(b_);
        case DistKind::Exponential: return "exp:mu=" + fmt_shortest(b_);
        case DistKind::Deterministic: return "det:c=" + fmt_shortest(a_);
    }
    return {};
}

namespace {

double parse_number(std::string_view token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw UsageError("bad number '" + std::string(token) + "' in distribution spec");
    }
    return v;
}

// "k=0.5,mu=0.2" -> values for the expected keys, order-insensitive.
void parse_params(std::string_view body, std::string_view spec,
                  std::initializer_list<std::pair<std::string_view, double*>> keys) {
    std::size_t pos = 0;
    int seen = 0;
    while (pos < body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::string_view item = body.substr(pos, comma == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("expected key=value, got '" + std::string(item) +
                             "' in distribution spec '" + std::string(spec) + "'");
        }
        const std::string_view key = item.substr(0, eq);
        bool matched = false;
        for (const auto& [name, slot] : keys) {
            if (key == name) {
                *slot = parse_number(item.substr(eq + 1));
                matched = true;
                ++seen;
                break;
            }
        }
        if (!matched) {
            throw UsageError("unknown parameter '" + std::string(key) +
                             "' in distribution spec '" + std::string(spec) + "'");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (seen != static_cast<int>(keys.size())) {
        throw UsageError("missing parameter in distribution spec '" + std::string(spec) + "'");
    }
}

}  // namespace

ServiceDistribution parse_dist_spec(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError("bad distribution spec '" + std::string(spec) +
                         "' (expected e.g. gamma:k=0.5,mu=0.2)");
    }
    const std::string_view name = spec.substr(0, colon);
    const std::string_view body = spec.substr(colon + 1);
    if (name == "gamma") {
        double k = 0, mu = 0;
        parse_params(body, spec, {{"k", &k}, {"mu", &mu}});
        return ServiceDistribution::gamma(k, mu);
    }
    if (name == "invgauss") {
        double alpha = 0, mu = 0;
        parse_params(body, spec, {{"alpha", &alpha}, {"mu", &mu}});
        return ServiceDistribution::inverse_gaussian(alpha, mu);
    }
    if (name == "exp") {
        double mu = 0;
        parse_params(body, spec, {{"mu", &mu}});
        return ServiceDistribution::exponential(mu);
    }
    if (name == "det") {
        double c = 0;
        parse_params(body, spec, {{"c", &c}});
        return ServiceDistribution::deterministic(c);
    }
    throw UsageError("unknown distribution '" + std::string(name) + "' in spec '" +
                     std::string(spec) + "'");
}

}  // namespace aoiq
