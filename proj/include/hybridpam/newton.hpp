#pragma once

// Damped Newton iteration with a forward-difference Jacobian, sized for
// the handful of unknowns in one cross-section solve.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace hybridpam::detail {

using Vec = std::vector<double>;

inline double max_abs(const Vec& v) noexcept {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(x));
    }
    return m;
}

/// Solves A x = b in place (row-major, n x n) by partial-pivot elimination.
/// Returns false for a numerically singular matrix.
inline bool solve_dense(std::vector<double>& a, Vec& b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        }
        if (!(std::abs(a[pivot * n + col]) > 1e-300)) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * b[c];
        b[i] = s / a[i * n + i];
    }
    return true;
}

struct NewtonOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
    double fd_step = 1e-8;
    int max_halvings = 40;
    double initial_step = 1.0;  // first trial fraction of the Newton step
};

struct NewtonResult {
    Vec x;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

/// `f(x)` returns the residual vector, or std::nullopt when x leaves the
/// admissible domain. The step is halved while the residual max-norm does
/// not decrease.
template <class Residual>
NewtonResult damped_newton(Residual&& f, Vec x, const NewtonOptions& opt) {
    NewtonResult out;
    std::optional<Vec> r = f(x);
    if (!r) {
        out.x = std::move(x);
        return out;
    }
    double norm = max_abs(*r);
    const std::size_t n = x.size();
    std::vector<double> jac(n * n);

    for (int it = 0; it < opt.max_iterations; ++it) {
        out.iterations = it;
        if (norm < opt.tolerance) {
            out.converged = true;
            break;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double h = opt.fd_step * std::max(1.0, std::abs(x[j]));
            Vec xp = x;
            xp[j] += h;
            std::optional<Vec> rp = f(xp);
            if (!rp) {
                xp[j] = x[j] - h;
                rp = f(xp);
                if (!rp) {
                    out.x = std::move(x);
                    out.residual = norm;
                    return out;
                }
                for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = ((*r)[i] - (*rp)[i]) / h;
            } else {
                for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = ((*rp)[i] - (*r)[i]) / h;
            }
        }
        Vec dx = *r;
        for (double& v : dx) v = -v;
        if (!solve_dense(jac, dx)) break;

        double lambda = opt.initial_step;
        bool accepted = false;
        for (int k = 0; k <= opt.max_halvings; ++k, lambda *= 0.5) {
            Vec trial = x;
            for (std::size_t i = 0; i < n; ++i) trial[i] += lambda * dx[i];
            std::optional<Vec> rt = f(trial);
            if (!rt) continue;
            const double tn = max_abs(*rt);
            if (tn < norm) {
                x = std::move(trial);
                r = std::move(rt);
                norm = tn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (norm < opt.tolerance) out.converged = true;
    out.x = std::move(x);
    out.residual = norm;
    return out;
}

}  // namespace hybridpam::detail
