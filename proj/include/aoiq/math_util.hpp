#pragma once

#include <cmath>

namespace aoiq::num {

// 1 - e^{-x}, accurate for small x.
inline double one_minus_exp(double x) { return -std::expm1(-x); }

// 1 - e^{-x}(1+x) = integral of t e^{-t} over [0,x]. Nonnegative; the direct
// form cancels to O(x^2) for small x, so switch to the series there.
inline double ramp1(double x) {
    if (x < 1e-2) {
        // x^2/2 - x^3/3 + x^4/8 - x^5/30 (next term < 1e-14 relative at x=1e-2)
        return x * x * (0.5 + x * (-1.0 / 3.0 + x * (0.125 - x / 30.0)));
    }
    return 1.0 - std::exp(-x) * (1.0 + x);
}

// 2 - e^{-x}(2+2x+x^2) = integral of t^2 e^{-t} over [0,x].
inline double ramp2(double x) {
    if (x < 2e-2) {
        // x^3/3 - x^4/4 + x^5/10 - x^6/36 + x^7/168
        return x * x * x * (1.0 / 3.0 + x * (-0.25 + x * (0.1 + x * (-1.0 / 36.0 + x / 168.0))));
    }
    return 2.0 - std::exp(-x) * (2.0 + x * (2.0 + x));
}

// e^{-x} (a + b x + c x^2). For x > 30 the three products span many orders of
// magnitude; Neumaier summation limits the cancellation (below that the direct
// evaluation is already exact to rounding).
inline double exp_poly2(double x, double a, double b, double c) {
    if (x <= 30.0) return std::exp(-x) * (a + x * (b + x * c));
    const double terms[3] = {a, b * x, c * x * x};
    double s = 0.0, comp = 0.0;
    for (double t : terms) {
        double v = s + t;
        comp += (std::fabs(s) >= std::fabs(t)) ? (s - v) + t : (t - v) + s;
        s = v;
    }
    return std::exp(-x) * (s + comp);
}

}  // namespace aoiq::num
