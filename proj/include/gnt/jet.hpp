#pragma once

#include <array>
#include <cstddef>

namespace gnt {

// Truncated Taylor expansion of a smooth function of up to three parameters
// around a base point, f(x0 + h) = sum_{|a| <= 3} c_a h^a. The jet tracks the
// highest order it is still exact to: differentiation lowers it by one and
// arithmetic keeps the minimum of its operands.
class Jet {
public:
    static constexpr int kMaxVars = 3;
    static constexpr int kMaxOrder = 3;
    static constexpr std::size_t kMaxTerms = 20;  // C(3 + 3, 3)

    Jet() = default;
    Jet(int nvars, double value);

    // The coordinate function x_axis expanded at x0.
    static Jet variable(int nvars, int axis, double x0);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    std::size_t size() const;

    double value() const { return c_[0]; }
    // Partial derivative d^a f at the base point; `exponents` has nvars entries.
    double derivative(const int* exponents) const;
    double d(int i) const;          // first partial
    double d(int i, int j) const;   // second partial

    // Jet of the partial derivative along `axis`, exact to order() - 1.
    Jet diff(int axis) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator*=(double s);
    Jet& operator+=(double s) { c_[0] += s; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a += -s; }
    friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }

    // g(f) for a scalar function g given its derivatives g, g', g'', g''' at f(x0).
    Jet compose(const std::array<double, 4>& derivatives) const;

private:
    void check_compatible(const Jet& o) const;

    int nvars_ = 0;
    int order_ = kMaxOrder;
    std::array<double, kMaxTerms> c_{};
};

Jet sin(const Jet& f);
Jet cos(const Jet& f);
Jet sqrt(const Jet& f);
Jet inverse(const Jet& f);

}  // namespace gnt
