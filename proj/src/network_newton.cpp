#include "network_newton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace alphaport::detail {

namespace {

struct Evaluation {
    Eigen::VectorXd gradient;
    Eigen::VectorXd scale;  // per-unknown sum of |incident flows|
    double relative = 0.0;
    double absolute = 0.0;
};

// Per-unknown convergence scale: the magnitudes of the flows meeting there,
// or the residual that rounding the unknowns (relative 16 eps of the drive)
// can produce, whichever is larger. The rounding term is taken both
// linearised and as a finite difference of f, which is what matters when a
// sublinear f meets drops close to zero.
Evaluation evaluate(const NetworkProblem& p, const Characteristic& f, const Eigen::VectorXd& y,
                    double tolerance) {
    Evaluation e;
    const auto n = static_cast<Eigen::Index>(p.unknowns);
    e.gradient = Eigen::VectorXd::Zero(n);
    e.scale = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd noise = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd x = branch_values(p, y);
    const double floor = 1e-12 * p.drive_scale;
    const double delta = 16.0 * std::numeric_limits<double>::epsilon() * p.drive_scale;
    for (std::size_t s = 0; s < p.rows.size(); ++s) {
        const auto& row = p.rows[s];
        const double xs = x[static_cast<Eigen::Index>(s)];
        const double ax = std::fabs(xs);
        const double flow = row.weight * f.eval_signed(xs);
        const double g = row.weight * f.slope_abs(std::max(ax, floor));
        const double jitter = row.weight * (f.eval(ax + delta) - f.eval(ax));
        for (const auto& [k, c] : row.coeffs) {
            const auto i = static_cast<Eigen::Index>(k);
            e.gradient[i] += c * flow;
            e.scale[i] += std::fabs(c * flow);
            diag[i] += g * c * c;
            noise[i] += jitter * std::fabs(c);
        }
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const double g = std::fabs(e.gradient[k]);
        const double scale = std::max({e.scale[k], delta * diag[k] / tolerance, noise[k] / tolerance});
        e.scale[k] = scale;
        e.absolute = std::max(e.absolute, g);
        if (g > 0.0) e.relative = std::max(e.relative, scale > 0.0 ? g / scale : 1.0);
    }
    return e;
}

Eigen::MatrixXd hessian(const NetworkProblem& p, const Characteristic& f, const Eigen::VectorXd& y) {
    const auto n = static_cast<Eigen::Index>(p.unknowns);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    const Eigen::VectorXd x = branch_values(p, y);
    const double floor = 1e-12 * p.drive_scale;
    bool regularize = false;
    for (std::size_t s = 0; s < p.rows.size(); ++s) {
        const auto& row = p.rows[s];
        double ax = std::fabs(x[static_cast<Eigen::Index>(s)]);
        if (ax < floor) {
            regularize = regularize || f.min_exponent() < 1.0;
            ax = floor;
        }
        const double g = row.weight * f.slope_abs(ax);
        for (const auto& [i, ci] : row.coeffs) {
            for (const auto& [j, cj] : row.coeffs) {
                h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += g * ci * cj;
            }
        }
    }
    const double max_diag = n > 0 ? h.diagonal().maxCoeff() : 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (regularize) h(k, k) += 1e-9;
        if (h(k, k) <= 1e-250 * max_diag) h(k, k) += 1e-250 * max_diag;
    }
    return h;
}

// Solves H step = -g after symmetric diagonal equilibration; the Hessian of a
// deep ladder spans many orders of magnitude along its diagonal.
Eigen::VectorXd newton_step(const Eigen::MatrixXd& h, const Eigen::VectorXd& g) {
    const Eigen::VectorXd s = h.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = s.asDiagonal() * h * s.asDiagonal();
    const Eigen::VectorXd z = scaled.ldlt().solve(-(s.asDiagonal() * g));
    return s.asDiagonal() * z;
}

}  // namespace

Eigen::VectorXd branch_values(const NetworkProblem& p, const Eigen::VectorXd& y) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(p.rows.size()));
    for (std::size_t s = 0; s < p.rows.size(); ++s) {
        double v = p.rows[s].offset;
        for (const auto& [k, c] : p.rows[s].coeffs) v += c * y[static_cast<Eigen::Index>(k)];
        x[static_cast<Eigen::Index>(s)] = v;
    }
    return x;
}

double network_content(const NetworkProblem& p, const Characteristic& f, const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = branch_values(p, y);
    double e = 0.0;
    for (std::size_t s = 0; s < p.rows.size(); ++s) {
        e += p.rows[s].weight * f.co_content(std::fabs(x[static_cast<Eigen::Index>(s)]));
    }
    return e;
}

Eigen::VectorXd linear_start(const NetworkProblem& p) {
    const auto linear = Characteristic::power_law(1.0);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.unknowns));
    if (p.unknowns == 0) return y;
    const auto e = evaluate(p, linear, y, 1e-12);
    const Eigen::MatrixXd h = hessian(p, linear, y);
    y += newton_step(h, e.gradient);
    return y;
}

NewtonResult minimize_content(const NetworkProblem& p, const Characteristic& f,
                              Eigen::VectorXd start, const NewtonSettings& settings) {
    NewtonResult result;
    result.y = std::move(start);
    auto eval = evaluate(p, f, result.y, settings.tolerance);
    const double stagnation = 4.0 * std::numeric_limits<double>::epsilon() * p.drive_scale;

    auto finish = [&](bool converged) {
        result.relative_residual = eval.relative;
        result.absolute_residual = eval.absolute;
        result.converged = converged;
        return result;
    };

    if (p.unknowns == 0) return finish(true);

    bool polished = false;
    for (int it = 0; it < settings.max_iterations; ++it) {
        const bool within_tol = eval.relative <= settings.tolerance;
        if (within_tol && polished) return finish(true);

        const Eigen::VectorXd step = newton_step(hessian(p, f, result.y), eval.gradient);
        if (!step.allFinite()) return finish(within_tol);
        result.iterations = it + 1;

        // Residual-decrease halving first, co-content Armijo as fallback.
        // Merit: residuals weighted by the current per-unknown scales, so that
        // weakly driven unknowns are not drowned by rounding at strong ones.
        const Eigen::VectorXd weights = eval.scale.cwiseMax(1e-300).cwiseInverse();
        const double norm0 = eval.gradient.cwiseProduct(weights).norm();
        bool accepted = false;
        double t = 1.0;
        for (int k = 0; k < 30 && !accepted; ++k, t *= 0.5) {
            Eigen::VectorXd trial = result.y + t * step;
            auto e = evaluate(p, f, trial, settings.tolerance);
            if (e.gradient.cwiseProduct(weights).norm() < norm0) {
                result.y = std::move(trial);
                eval = std::move(e);
                accepted = true;
            }
        }
        if (!accepted) {
            const double e0 = network_content(p, f, result.y);
            const double slope = eval.gradient.dot(step);
            t = 1.0;
            for (int k = 0; k < 60 && !accepted; ++k, t *= 0.5) {
                Eigen::VectorXd trial = result.y + t * step;
                if (network_content(p, f, trial) <= e0 + 1e-4 * t * slope) {
                    result.y = std::move(trial);
                    eval = evaluate(p, f, result.y, settings.tolerance);
                    accepted = true;
                }
            }
        }

        if (within_tol) {
            // One polishing step past the tolerance, kept only if it helped.
            polished = true;
            continue;
        }
        if (!accepted || t * step.lpNorm<Eigen::Infinity>() <= stagnation) {
            return finish(eval.relative <= std::max(settings.tolerance, 1e-9));
        }
    }
    return finish(eval.relative <= settings.tolerance);
}

int max_iterations_from_env(int fallback) {
    if (const char* env = std::getenv("ALPHAPORT_MAX_ITERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 1'000'000) return static_cast<int>(v);
    }
    return fallback;
}

}  // namespace alphaport::detail
