#include "gnt/grid.hpp"

#include <cmath>
#include <numbers>

#include "gnt/errors.hpp"

namespace gnt {

AxisRule parse_axis_rule(std::string_view tag) {
    if (tag == "periodic") return AxisRule::periodic;
    if (tag == "gauss_legendre") return AxisRule::gauss_legendre;
    throw ParseError("unknown axis rule '" + std::string(tag) + "' (expected periodic or gauss_legendre)");
}

std::string_view to_string(AxisRule rule) {
    return rule == AxisRule::periodic ? "periodic" : "gauss_legendre";
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    // P_n(x) and P_n'(x) from the three-term recurrence.
    const auto legendre = [n](double x, double& dp) {
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        return p1;
    };
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            const double step = legendre(x, dp) / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        legendre(x, dp);
        const double w = 2.0 / ((1 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

Axis Axis::make(AxisRule rule, int n, double a, double b) {
    if (n < 1) throw PreconditionError("grid axes need at least one node");
    if (n > 4096) throw LimitError("grid axes are limited to 4096 nodes");
    if (!(b > a)) throw PreconditionError("grid axis interval must satisfy a < b");
    Axis axis{rule, n, a, b, {}, {}};
    if (rule == AxisRule::periodic) {
        const double h = (b - a) / n;
        for (int k = 0; k < n; ++k) {
            axis.nodes.push_back(a + k * h);
            axis.weights.push_back(h);
        }
    } else {
        gauss_legendre(n, axis.nodes, axis.weights);
        const double half = (b - a) / 2, mid = (a + b) / 2;
        for (std::size_t k = 0; k < axis.nodes.size(); ++k) {
            axis.nodes[k] = mid + half * axis.nodes[k];
            axis.weights[k] *= half;
        }
    }
    return axis;
}

ParamGrid::ParamGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw PreconditionError("grid needs at least one axis");
    for (const auto& a : axes_) size_ *= a.nodes.size();
    if (size_ > (1u << 20)) throw LimitError("grid is limited to 2^20 nodes");
}

std::vector<double> ParamGrid::node(std::size_t k) const {
    std::vector<double> x(axes_.size());
    for (std::size_t i = axes_.size(); i-- > 0;) {
        const std::size_t n = axes_[i].nodes.size();
        x[i] = axes_[i].nodes[k % n];
        k /= n;
    }
    return x;
}

double ParamGrid::weight(std::size_t k) const {
    double w = 1;
    for (std::size_t i = axes_.size(); i-- > 0;) {
        const std::size_t n = axes_[i].nodes.size();
        w *= axes_[i].weights[k % n];
        k /= n;
    }
    return w;
}

}  // namespace gnt
