#include "gnt/jet.hpp"

#include <cmath>
#include <vector>

#include "gnt/errors.hpp"
#include "gnt/multiindex.hpp"

namespace gnt {

namespace {

struct JetTables {
    std::size_t size = 1;
    std::vector<int> weight;
    std::vector<std::array<int, Jet::kMaxVars>> exps;
    std::vector<double> factorial;  // prod_i a_i!
    // raise[axis][k] = position of (exponent k + e_axis), or -1 past the order
    std::array<std::vector<int>, Jet::kMaxVars> raise;
    std::vector<MonomialBasis::ProductTerm> products;
};

JetTables build(int nvars) {
    JetTables t;
    if (nvars == 0) {
        t.weight = {0};
        t.exps = {{0, 0, 0}};
        t.factorial = {1.0};
        return t;
    }
    const auto basis = monomial_basis(nvars, Jet::kMaxOrder);
    t.size = basis->size();
    t.products = basis->product_table();
    for (std::size_t k = 0; k < t.size; ++k) {
        const auto& u = (*basis)[k];
        std::array<int, Jet::kMaxVars> e{0, 0, 0};
        double fact = 1;
        for (int i = 0; i < nvars; ++i) {
            e[static_cast<std::size_t>(i)] = u[i];
            for (int j = 2; j <= u[i]; ++j) fact *= j;
        }
        t.weight.push_back(u.weight());
        t.exps.push_back(e);
        t.factorial.push_back(fact);
        for (int axis = 0; axis < nvars; ++axis) {
            const auto up = basis->find(sharp(axis, u));
            t.raise[static_cast<std::size_t>(axis)].push_back(up ? static_cast<int>(*up) : -1);
        }
    }
    return t;
}

const JetTables& tables(int nvars) {
    static const std::array<JetTables, Jet::kMaxVars + 1> all{build(0), build(1), build(2), build(3)};
    return all[static_cast<std::size_t>(nvars)];
}

}  // namespace

Jet::Jet(int nvars, double value) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw LimitError("jets support at most 3 parameters");
    c_[0] = value;
}

Jet Jet::variable(int nvars, int axis, double x0) {
    if (axis < 0 || axis >= nvars) throw PreconditionError("jet variable axis out of range");
    Jet j(nvars, x0);
    // Degree-one monomials sit right after the constant, in graded-lex order,
    // i.e. e_{nvars-1} first.
    j.c_[static_cast<std::size_t>(nvars - axis)] = 1.0;
    return j;
}

std::size_t Jet::size() const { return tables(nvars_).size; }

double Jet::derivative(const int* exponents) const {
    const auto& t = tables(nvars_);
    int w = 0;
    for (int i = 0; i < nvars_; ++i) w += exponents[i];
    if (w > order_) throw PreconditionError("derivative exceeds the order the jet is exact to");
    for (std::size_t k = 0; k < t.size; ++k) {
        bool match = true;
        for (int i = 0; i < nvars_ && match; ++i) match = t.exps[k][static_cast<std::size_t>(i)] == exponents[i];
        if (match) return c_[k] * t.factorial[k];
    }
    return 0.0;
}

double Jet::d(int i) const {
    std::array<int, kMaxVars> e{0, 0, 0};
    ++e[static_cast<std::size_t>(i)];
    return derivative(e.data());
}

double Jet::d(int i, int j) const {
    std::array<int, kMaxVars> e{0, 0, 0};
    ++e[static_cast<std::size_t>(i)];
    ++e[static_cast<std::size_t>(j)];
    return derivative(e.data());
}

Jet Jet::diff(int axis) const {
    if (axis < 0 || axis >= nvars_) throw PreconditionError("jet derivative axis out of range");
    if (order_ < 1) throw PreconditionError("cannot differentiate a jet exact only to order 0");
    const auto& t = tables(nvars_);
    Jet out(nvars_, 0.0);
    out.order_ = order_ - 1;
    const auto& raise = t.raise[static_cast<std::size_t>(axis)];
    for (std::size_t k = 0; k < t.size; ++k) {
        if (t.weight[k] > out.order_ || raise[k] < 0) continue;
        out.c_[k] = (t.exps[k][static_cast<std::size_t>(axis)] + 1) * c_[static_cast<std::size_t>(raise[k])];
    }
    return out;
}

void Jet::check_compatible(const Jet& o) const {
    if (nvars_ != o.nvars_ && nvars_ != 0 && o.nvars_ != 0)
        throw PreconditionError("jets over different parameter counts");
}

Jet& Jet::operator+=(const Jet& o) {
    check_compatible(o);
    if (nvars_ == 0) nvars_ = o.nvars_;
    order_ = std::min(order_, o.order_);
    for (std::size_t k = 0; k < kMaxTerms; ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_compatible(o);
    if (nvars_ == 0) nvars_ = o.nvars_;
    order_ = std::min(order_, o.order_);
    for (std::size_t k = 0; k < kMaxTerms; ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    check_compatible(o);
    if (nvars_ == 0) nvars_ = o.nvars_;
    const auto& t = tables(nvars_);
    const int order = std::min(order_, o.order_);
    std::array<double, kMaxTerms> r{};
    if (nvars_ == 0) {
        r[0] = c_[0] * o.c_[0];
    } else {
        for (const auto& p : t.products)
            if (t.weight[p.c] <= order) r[p.c] += c_[p.a] * o.c_[p.b];
    }
    c_ = r;
    order_ = order;
    return *this;
}

Jet Jet::compose(const std::array<double, 4>& g) const {
    Jet delta = *this;
    delta.c_[0] = 0.0;
    Jet out(nvars_, g[0]);
    out.order_ = order_;
    Jet power = delta;
    double factorial = 1;
    for (int k = 1; k <= kMaxOrder; ++k) {
        factorial *= k;
        out += (g[static_cast<std::size_t>(k)] / factorial) * power;
        if (k < kMaxOrder) power *= delta;
    }
    return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

Jet sin(const Jet& f) {
    const double s = std::sin(f.value()), c = std::cos(f.value());
    return f.compose({s, c, -s, -c});
}

Jet cos(const Jet& f) {
    const double s = std::sin(f.value()), c = std::cos(f.value());
    return f.compose({c, -s, -c, s});
}

Jet sqrt(const Jet& f) {
    const double v = f.value();
    if (!(v > 0)) throw NumericalError("square root of a non-positive jet");
    const double s = std::sqrt(v);
    return f.compose({s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v)});
}

Jet inverse(const Jet& f) {
    const double v = f.value();
    if (v == 0) throw NumericalError("inverse of a jet with zero value");
    const double r = 1.0 / v;
    return f.compose({r, -r * r, 2 * r * r * r, -6 * r * r * r * r});
}

}  // namespace gnt
