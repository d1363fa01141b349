#include "edgeloc/kedge.hpp"

#include "edgeloc/errors.hpp"

#include <cmath>
#include <numbers>

namespace edgeloc::kedge {

namespace {

constexpr double kPi = std::numbers::pi;

// Power series of C and S, summed in long double: at x near 4 the
// alternating terms reach ~5e8 and double-precision accumulation would
// lose the 1e-8 budget to cancellation.
FresnelPair fresnel_series(double x) {
    const long double x2 = static_cast<long double>(x) * x;
    const long double q = (static_cast<long double>(kPi) / 2.0L) * x2; // (pi/2) x^2
    const long double q2 = q * q;

    long double c_sum = 0.0L, s_sum = 0.0L;
    // c_term_n = (-1)^n (pi/2)^{2n} x^{4n+1} / ((2n)! (4n+1))
    // s_term_n = (-1)^n (pi/2)^{2n+1} x^{4n+3} / ((2n+1)! (4n+3))
    long double c_base = x;            // x^{4n+1} (pi/2)^{2n} / (2n)!
    long double s_base = q * x;        // x^{4n+3} (pi/2)^{2n+1} / (2n+1)!  (x^3 via q*x = pi/2 x^3)
    for (int n = 0; n < 120; ++n) {
        const long double c_term = c_base / (4 * n + 1);
        const long double s_term = s_base / (4 * n + 3);
        c_sum += c_term;
        s_sum += s_term;
        if (std::fabs((double)c_term) < 1e-20 && std::fabs((double)s_term) < 1e-20 && n > 2) break;
        c_base *= -q2 / ((2 * n + 1) * (2 * n + 2));
        s_base *= -q2 / ((2 * n + 2) * (2 * n + 3));
    }
    return {static_cast<double>(c_sum), static_cast<double>(s_sum)};
}

// Auxiliary-function asymptotics for x > 4 (Abramowitz & Stegun 7.3.9-10,
// 7.3.27-28): C = 1/2 + f sin(u) - g cos(u), S = 1/2 - f cos(u) - g sin(u),
// u = pi x^2 / 2. The series are truncated at their smallest term.
FresnelPair fresnel_asymptotic(double x) {
    const long double px2 = static_cast<long double>(kPi) * x * x;
    const long double inv = 1.0L / (px2 * px2);

    long double f_sum = 0.0L, term = 1.0L;
    for (int m = 0; m < 40; ++m) {
        f_sum += term;
        const long double next = -term * (4 * m + 1) * (4 * m + 3) * inv;
        if (std::fabs((double)next) >= std::fabs((double)term)) break;
        term = next;
    }
    long double g_sum = 0.0L;
    term = 1.0L;
    for (int m = 0; m < 40; ++m) {
        g_sum += term;
        const long double next = -term * (4 * m + 3) * (4 * m + 5) * inv;
        if (std::fabs((double)next) >= std::fabs((double)term)) break;
        term = next;
    }

    const long double f = f_sum / (static_cast<long double>(kPi) * x);
    const long double g = g_sum / (static_cast<long double>(kPi) * kPi * x * x * x);
    const long double u = 0.5L * static_cast<long double>(kPi) * x * x;
    const long double su = sinl(u), cu = cosl(u);
    return {static_cast<double>(0.5L + f * su - g * cu),
            static_cast<double>(0.5L - f * cu - g * su)};
}

} // namespace

FresnelPair fresnel_cs(double x) {
    if (!std::isfinite(x)) throw ConfigError("fresnel_cs: non-finite argument");
    const double ax = std::fabs(x);
    FresnelPair p = (ax <= 4.0) ? fresnel_series(ax) : fresnel_asymptotic(ax);
    if (x < 0) { p.c_val = -p.c_val; p.s_val = -p.s_val; } // odd functions
    return p;
}

std::complex<double> diffraction_loss(double nu) {
    const FresnelPair p = fresnel_cs(nu);
    // (1+j)/2 * [(1/2 - C) - j (1/2 - S)]
    const std::complex<double> half_plane(0.5 - p.c_val, -(0.5 - p.s_val));
    return std::complex<double>(0.5, 0.5) * half_plane;
}

double fresnel_param(double theta_deg, double f_hz, double d1_m, double d2_m, double c_mps) {
    if (d1_m <= 0 || d2_m <= 0) throw ConfigError("fresnel_param: d1 and d2 must be positive");
    if (f_hz <= 0) throw ConfigError("fresnel_param: frequency must be positive");
    if (c_mps <= 0) throw ConfigError("fresnel_param: speed of sound must be positive");
    const double lambda = c_mps / f_hz;
    const double theta_rad = theta_deg * kPi / 180.0;
    return theta_rad * std::sqrt(2.0 * d1_m * d2_m / (lambda * (d1_m + d2_m)));
}

LossCurve loss_curve(double theta_deg, double d1_m, double d2_m,
                     std::vector<double> freqs_hz, double c_mps) {
    LossCurve out;
    out.theta_deg = theta_deg;
    out.d1_m = d1_m;
    out.d2_m = d2_m;
    out.loss.reserve(freqs_hz.size());
    for (double f : freqs_hz)
        out.loss.push_back(diffraction_loss(fresnel_param(theta_deg, f, d1_m, d2_m, c_mps)));
    out.freqs_hz = std::move(freqs_hz);
    return out;
}

RatioCurve ratio_curve(double theta_deg, double delta_theta_deg, double d1_m, double d2_m,
                       std::vector<double> freqs_hz, double c_mps) {
    if (delta_theta_deg < 0) throw ConfigError("ratio_curve: delta_theta must be >= 0");
    RatioCurve out;
    out.theta_deg = theta_deg;
    out.delta_theta_deg = delta_theta_deg;
    out.ratio_db.reserve(freqs_hz.size());
    for (double f : freqs_hz) {
        const double near_mag = std::abs(diffraction_loss(fresnel_param(theta_deg, f, d1_m, d2_m, c_mps)));
        const double far_mag = std::abs(diffraction_loss(fresnel_param(theta_deg + delta_theta_deg, f, d1_m, d2_m, c_mps)));
        out.ratio_db.push_back(20.0 * std::log10(near_mag / far_mag));
    }
    out.freqs_hz = std::move(freqs_hz);
    return out;
}

std::vector<double> freq_grid(double lo_hz, double hi_hz, double step_hz) {
    if (step_hz <= 0 || hi_hz < lo_hz) throw ConfigError("freq_grid: bad bounds or step");
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((hi_hz - lo_hz) / step_hz + 1e-9)) + 1;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(lo_hz + i * step_hz);
    return out;
}

} // namespace edgeloc::kedge
