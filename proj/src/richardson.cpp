#include "gnt/richardson.hpp"

#include <algorithm>
#include <cmath>

#include "gnt/errors.hpp"

namespace gnt {

std::vector<double> halving_steps(double h0, int levels) {
    std::vector<double> steps;
    for (int k = 0; k < levels; ++k) steps.push_back(h0 / std::pow(2.0, k));
    return steps;
}

Extrapolated central_difference(const VectorFunction& f, std::span<const double> steps) {
    if (steps.empty()) throw PreconditionError("step schedule is empty");
    for (std::size_t k = 0; k < steps.size(); ++k) {
        if (!(steps[k] > 0)) throw PreconditionError("steps must be positive");
        if (k && !(steps[k] < steps[k - 1])) throw PreconditionError("steps must be strictly decreasing");
    }

    Extrapolated out;
    for (double h : steps) {
        auto plus = f(h);
        auto minus = f(-h);
        std::vector<double> d(plus.size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = (plus[c] - minus[c]) / (2 * h);
        out.raw.push_back(std::move(d));
    }

    const std::size_t n = steps.size();
    const std::size_t width = out.raw.front().size();
    out.value.assign(width, 0.0);
    out.error.assign(width, 0.0);

    for (std::size_t c = 0; c < width; ++c) {
        // Neville tableau on x = h^2, evaluated at x = 0. diag[k] is the
        // extrapolation through steps 0..k.
        std::vector<double> p(n), diag(n);
        for (std::size_t k = 0; k < n; ++k) p[k] = out.raw[k][c];
        diag[0] = p[0];
        for (std::size_t k = 1; k < n; ++k) {
            for (std::size_t j = k; j-- > 0;) {
                const double xj = steps[j] * steps[j];
                const double xk = steps[k] * steps[k];
                p[j] = (xj * p[j + 1] - xk * p[j]) / (xj - xk);
            }
            diag[k] = p[0];
        }
        out.value[c] = diag[n - 1];
        out.error[c] = n >= 2 ? std::abs(diag[n - 1] - diag[n - 2]) : 0.0;

        double scale = 0;
        for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::abs(out.raw[k][c]));
        const double noise = 1e-12 * (scale + 1e-300) + 1e-300;
        for (std::size_t k = 2; k < n; ++k) {
            const double d0 = std::abs(out.raw[k - 1][c] - out.raw[k - 2][c]);
            const double d1 = std::abs(out.raw[k][c] - out.raw[k - 1][c]);
            if (d1 > d0 && d1 > noise) out.converged = false;
        }
    }
    return out;
}

}  // namespace gnt
