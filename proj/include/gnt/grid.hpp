#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gnt {

enum class AxisRule { periodic, gauss_legendre };

AxisRule parse_axis_rule(std::string_view tag);
std::string_view to_string(AxisRule rule);

// One parameter axis: periodic nodes x_k = a + k (b - a) / n with equal
// weights, or Gauss-Legendre nodes on [a, b] (never touching the ends).
struct Axis {
    AxisRule rule = AxisRule::periodic;
    int n = 0;
    double a = 0;
    double b = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static Axis make(AxisRule rule, int n, double a, double b);
};

// Gauss-Legendre nodes and weights on [-1, 1], ascending, by Newton iteration
// on the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Tensor-product grid. Node k enumerates axis indices with the last axis
// varying fastest.
class ParamGrid {
public:
    explicit ParamGrid(std::vector<Axis> axes);

    int m() const { return static_cast<int>(axes_.size()); }
    const std::vector<Axis>& axes() const { return axes_; }
    std::size_t size() const { return size_; }

    std::vector<double> node(std::size_t k) const;
    double weight(std::size_t k) const;

private:
    std::vector<Axis> axes_;
    std::size_t size_ = 1;
};

}  // namespace gnt
