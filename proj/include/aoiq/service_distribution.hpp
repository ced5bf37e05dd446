#pragma once

#include <string>
#include <string_view>

#include "aoiq/rng.hpp"

namespace aoiq {

enum class DistKind { Gamma, InverseGaussian, Exponential, Deterministic };

// E[e^{-gamma S}], E[S e^{-gamma S}], E[S^2 e^{-gamma S}].
struct MgfTriple {
    double mgf;
    double mgf1;
    double mgf2;
};

// Statistics of the residual service time R seen by a Poisson arrival during
// a busy period (density P(S>r)/E[S]), evaluated at rate gamma.
struct ResidualStats {
    double mgf_r;   // E[e^{-gamma R}] = (1 - mgf(gamma)) / (gamma E[S])
    double mgf_r1;  // E[R e^{-gamma R}]
    double mean_r;  // E[R] = E[S^2] / (2 E[S])
};

// Service-time law. Rate parameterization: mean() = 1/mu for Gamma, inverse
// Gaussian and exponential; smaller shape means a heavier tail.
class ServiceDistribution {
public:
    static ServiceDistribution gamma(double k, double mu);
    static ServiceDistribution inverse_gaussian(double alpha, double mu);
    static ServiceDistribution exponential(double mu);
    static ServiceDistribution deterministic(double c);

    DistKind kind() const { return kind_; }
    double shape() const { return a_; }  // k / alpha / unused / c
    double rate() const { return b_; }   // mu (unused for deterministic)

    double mean() const;
    double second_moment() const;

    MgfTriple mgf_triple(double gamma) const;       // gamma >= 0
    ResidualStats residual_stats(double gamma) const;  // gamma > 0, mean() > 0

    double sample(Rng& rng) const;

    std::string spec_string() const;

private:
    ServiceDistribution(DistKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}
    DistKind kind_;
    double a_;
    double b_;
};

// Parses "gamma:k=<f>,mu=<f>" | "invgauss:alpha=<f>,mu=<f>" | "exp:mu=<f>" |
// "det:c=<f>". Throws UsageError naming the offending token.
ServiceDistribution parse_dist_spec(std::string_view spec);

}  // namespace aoiq
