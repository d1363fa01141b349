#pragma once

// Knife-edge diffraction: Fresnel integrals, the complex diffraction loss
// L(nu), the Fresnel-Kirchhoff obstruction parameter, and loss/ratio curves
// over frequency.

#include <complex>
#include <vector>

namespace edgeloc::kedge {

// Fresnel cosine and sine integrals evaluated at one point:
//   C(x) = int_0^x cos(pi t^2 / 2) dt,  S(x) = int_0^x sin(pi t^2 / 2) dt.
// Both odd, both -> +/-0.5 as x -> +/-inf. Accurate to ~1e-10 absolute
// (power series up to |x| = 4, auxiliary-function asymptotics beyond).
struct FresnelPair {
    double c_val;
    double s_val;
};

FresnelPair fresnel_cs(double x);

// Diffraction loss of a half-plane edge,
//   L(nu) = (1+j)/2 * int_nu^inf exp(-j pi t^2 / 2) dt,
// evaluated through the C/S closed form. |L(0)| = 0.5; |L| -> 1 below the
// shadow boundary (nu -> -inf) and -> 0 deep in shadow (nu -> +inf).
std::complex<double> diffraction_loss(double nu);

// Small-angle Fresnel-Kirchhoff parameter for a source d1 behind the edge
// and a receiver d2 in front, at diffraction angle theta:
//   nu = theta_rad * sqrt(2 d1 d2 / (lambda (d1 + d2))),  lambda = c / f.
double fresnel_param(double theta_deg, double f_hz, double d1_m, double d2_m, double c_mps);

struct LossCurve {
    std::vector<double> freqs_hz;
    std::vector<std::complex<double>> loss;
    double theta_deg;
    double d1_m;
    double d2_m;
};

struct RatioCurve {
    std::vector<double> freqs_hz;
    std::vector<double> ratio_db;
    double theta_deg;
    double delta_theta_deg;
};

LossCurve loss_curve(double theta_deg, double d1_m, double d2_m,
                     std::vector<double> freqs_hz, double c_mps);

// 20*log10(|L(nu(theta, f))| / |L(nu(theta + delta_theta, f))|) per frequency;
// independent of the source spectrum by construction.
RatioCurve ratio_curve(double theta_deg, double delta_theta_deg, double d1_m, double d2_m,
                       std::vector<double> freqs_hz, double c_mps);

// Uniform frequency grid helper (inclusive of hi when it lands on the grid).
std::vector<double> freq_grid(double lo_hz, double hi_hz, double step_hz);

} // namespace edgeloc::kedge
