#include "edgeloc/arrivals.hpp"

#include "edgeloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace edgeloc::arrivals {

int ArrivalSet::n_detected() const {
    int n = 0;
    for (bool d : detected) n += d ? 1 : 0;
    return n;
}

double toa_model(double z_m, double r0_m, double z0_m, double t0_s, double c_mps) {
    return t0_s + std::sqrt((z_m - z0_m) * (z_m - z0_m) + r0_m * r0_m) / c_mps;
}

ArrivalSet detect_first_arrival(const dsp::EnvelopeImage& env, const DetectConfig& cfg) {
    if (env.rows() == 0 || env.length() == 0) throw ConfigError("detect_first_arrival: empty envelope");
    const std::size_t n = env.length();
    const std::size_t bg_n = std::min<std::size_t>(n, std::max<std::size_t>(1, std::llround(cfg.noise_window_s * env.fs_hz)));

    ArrivalSet out;
    out.heights_m = env.heights_m;
    out.toa_s.assign(env.rows(), std::numeric_limits<double>::quiet_NaN());
    out.detected.assign(env.rows(), false);
    out.confidence.assign(env.rows(), 0.0);

    for (int ch = 0; ch < env.rows(); ++ch) {
        const auto& e = env.values[ch];
        double bg = 0.0;
        for (std::size_t i = 0; i < bg_n; ++i) bg += e[i];
        bg /= bg_n;
        const double peak = *std::max_element(e.begin(), e.end());
        const double thr = std::max(cfg.threshold_factor * bg, cfg.floor_frac * peak);
        if (!(peak > 0.0)) continue; // silent channel

        const std::size_t halfwidth = std::max<std::size_t>(
            1, std::llround(cfg.peak_halfwidth_s * env.fs_hz));
        auto dominates_neighborhood = [&](std::size_t i) {
            const std::size_t lo = i > halfwidth ? i - halfwidth : 0;
            const std::size_t hi = std::min(n, i + halfwidth + 1);
            for (std::size_t k = lo; k < hi; ++k)
                if (e[k] > e[i]) return false;
            return true;
        };

        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (e[i] > thr && e[i] >= e[i - 1] && e[i] >= e[i + 1] && dominates_neighborhood(i)) {
                // parabolic sub-sample refinement
                const double a = e[i - 1], b = e[i], c = e[i + 1];
                const double denom = a - 2.0 * b + c;
                double frac = 0.0;
                if (denom < -1e-30) frac = 0.5 * (a - c) / denom;
                frac = std::clamp(frac, -0.5, 0.5);
                out.toa_s[ch] = env.t_start_s + (static_cast<double>(i) + frac) / env.fs_hz;
                out.detected[ch] = true;
                out.confidence[ch] = bg > 0.0 ? std::clamp(1.0 - cfg.threshold_factor * bg / e[i], 0.0, 1.0) : 1.0;
                break;
            }
        }
    }
    return out;
}

namespace {

struct Design {
    std::vector<double> z;
    std::vector<double> toa;
};

double sse_of(const Design& d, double r0, double z0, double t0, double c) {
    double sse = 0.0;
    for (std::size_t i = 0; i < d.z.size(); ++i) {
        const double r = toa_model(d.z[i], r0, z0, t0, c) - d.toa[i];
        sse += r * r;
    }
    return sse;
}

// Solve the damped 3x3 normal equations by Cramer's rule.
bool solve3(const std::array<std::array<double, 3>, 3>& a, const std::array<double, 3>& b,
            std::array<double, 3>& x) {
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                     - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                     + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (!(std::fabs(det) > 1e-300)) return false;
    std::array<std::array<double, 3>, 3> m;
    for (int c = 0; c < 3; ++c) {
        m = a;
        for (int r = 0; r < 3; ++r) m[r][c] = b[r];
        const double dc = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        x[c] = dc / det;
    }
    return true;
}

} // namespace

WavefrontFit fit_wavefront(const ArrivalSet& arrivals, double c_mps, const FitConfig& cfg) {
    Design d;
    for (std::size_t i = 0; i < arrivals.toa_s.size(); ++i) {
        if (i < arrivals.detected.size() && arrivals.detected[i]) {
            d.z.push_back(arrivals.heights_m[i]);
            d.toa.push_back(arrivals.toa_s[i]);
        }
    }
    const std::size_t n = d.z.size();
    if (n < 3) throw ConfigError("fit_wavefront: need >= 3 detected channels");
    if (std::set<double>(d.z.begin(), d.z.end()).size() < 2)
        throw ConfigError("fit_wavefront: need >= 2 distinct heights");
    if (!(c_mps > 0)) throw ConfigError("fit_wavefront: c must be > 0");

    // Initialization: z0 at the min-TOA channel, t0 + r0/c = min TOA,
    // r0 from a coarse log-spaced scan picking the lowest residual.
    const auto [toa_lo_it, toa_hi_it] = std::minmax_element(d.toa.begin(), d.toa.end());
    if (*toa_hi_it - *toa_lo_it < 1e-7)
        throw RejectionError(RejectionError::Kind::Degenerate,
                             "fit_wavefront: flat wavefront (no TOA curvature across heights)");
    const std::size_t i_min = toa_lo_it - d.toa.begin();
    const double z0_init = d.z[i_min];
    const double toa_min = d.toa[i_min];

    double r0 = cfg.r0_grid_min_m, best_sse = std::numeric_limits<double>::infinity();
    const double log_lo = std::log(cfg.r0_grid_min_m), log_hi = std::log(cfg.r0_grid_max_m);
    for (int g = 0; g < cfg.r0_grid_points; ++g) {
        const double r0_g = std::exp(log_lo + (log_hi - log_lo) * g / (cfg.r0_grid_points - 1));
        const double sse = sse_of(d, r0_g, z0_init, toa_min - r0_g / c_mps, c_mps);
        if (sse < best_sse) { best_sse = sse; r0 = r0_g; }
    }
    double z0 = z0_init;
    double t0 = toa_min - r0 / c_mps;

    // Damped Gauss-Newton with the analytic Jacobian.
    double lambda = 1e-6;
    double sse = sse_of(d, r0, z0, t0, c_mps);
    bool converged = false;
    for (int it = 0; it < cfg.max_iter; ++it) {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtr{};
        for (std::size_t i = 0; i < n; ++i) {
            const double dz = d.z[i] - z0;
            const double s = std::sqrt(dz * dz + r0 * r0);
            const double res = t0 + s / c_mps - d.toa[i];
            const std::array<double, 3> j{r0 / (c_mps * s), -dz / (c_mps * s), 1.0};
            for (int a = 0; a < 3; ++a) {
                jtr[a] += j[a] * res;
                for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
            }
        }

        bool stepped = false;
        for (int tries = 0; tries < 12; ++tries) {
            auto damped = jtj;
            for (int a = 0; a < 3; ++a) damped[a][a] += lambda * std::max(jtj[a][a], 1e-12);
            std::array<double, 3> step{};
            std::array<double, 3> rhs{-jtr[0], -jtr[1], -jtr[2]};
            if (!solve3(damped, rhs, step)) { lambda *= 10.0; continue; }
            const double r0_new = r0 + step[0];
            const double z0_new = z0 + step[1];
            const double t0_new = t0 + step[2];
            if (!(r0_new > 1e-4)) { lambda *= 10.0; continue; }
            const double sse_new = sse_of(d, r0_new, z0_new, t0_new, c_mps);
            if (sse_new <= sse) {
                const double rel_step = std::fabs(step[0]) / std::max(r0, 1e-9)
                                      + std::fabs(step[1]) + std::fabs(step[2]);
                r0 = r0_new; z0 = z0_new; t0 = t0_new;
                const double improve = sse - sse_new;
                sse = sse_new;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
                if (rel_step < 1e-12 || improve < 1e-30) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        // no improving step under heavy damping = local minimum reached
        if (!stepped) converged = true;
        if (converged) break;
        if (r0 > cfg.r0_degenerate_m)
            throw RejectionError(RejectionError::Kind::Degenerate,
                                 "fit_wavefront: wavefront is flat (r0 diverges)");
    }
    if (!converged)
        throw RejectionError(RejectionError::Kind::Degenerate,
                             "fit_wavefront: no convergence within the iteration cap");
    if (r0 > cfg.r0_degenerate_m)
        throw RejectionError(RejectionError::Kind::Degenerate,
                             "fit_wavefront: wavefront is flat (r0 diverges)");

    WavefrontFit fit;
    fit.r0_m = r0;
    fit.z0_m = z0;
    fit.t0_s = t0;
    fit.n_used = static_cast<int>(n);
    fit.rmse_s = std::sqrt(sse / n);

    // rmse-scaled parameter variances from (J^T J)^-1
    {
        std::array<std::array<double, 3>, 3> jtj{};
        for (std::size_t i = 0; i < n; ++i) {
            const double dz = d.z[i] - z0;
            const double s = std::sqrt(dz * dz + r0 * r0);
            const std::array<double, 3> j{r0 / (c_mps * s), -dz / (c_mps * s), 1.0};
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
        }
        const double sigma2 = std::max(fit.rmse_s * fit.rmse_s, 1e-24);
        for (int a = 0; a < 3; ++a) {
            std::array<double, 3> rhs{0.0, 0.0, 0.0};
            rhs[a] = 1.0;
            std::array<double, 3> col{};
            if (solve3(jtj, rhs, col)) fit.variance[a] = sigma2 * col[a];
            else fit.variance[a] = std::numeric_limits<double>::infinity();
        }
    }

    if (fit.rmse_s > cfg.rmse_reject_s)
        throw RejectionError(RejectionError::Kind::FitRmse,
                             "fit_wavefront: rmse " + std::to_string(fit.rmse_s * 1e3) +
                             " ms exceeds " + std::to_string(cfg.rmse_reject_s * 1e3) + " ms");
    return fit;
}

} // namespace edgeloc::arrivals
