#pragma once

#include <memory>
#include <vector>

#include "gnt/multiindex.hpp"

namespace gnt::detail {

// Element of R[t_1..t_q] / (monomials of total degree > d).
class TruncatedPoly {
public:
    explicit TruncatedPoly(std::shared_ptr<const MonomialBasis> basis)
        : basis_(std::move(basis)), c_(basis_->size(), 0.0) {}

    static TruncatedPoly constant(std::shared_ptr<const MonomialBasis> basis, double value) {
        TruncatedPoly p(std::move(basis));
        p.c_[0] = value;
        return p;
    }

    double& operator[](std::size_t k) { return c_[k]; }
    double operator[](std::size_t k) const { return c_[k]; }
    const std::vector<double>& coefficients() const { return c_; }

    TruncatedPoly operator*(const TruncatedPoly& o) const {
        TruncatedPoly r(basis_);
        for (const auto& term : basis_->product_table()) r.c_[term.c] += c_[term.a] * o.c_[term.b];
        return r;
    }

    // this -= a * b
    void subtract_product(const TruncatedPoly& a, const TruncatedPoly& b) {
        for (const auto& term : basis_->product_table()) c_[term.c] -= a.c_[term.a] * b.c_[term.b];
    }

    // Multiplicative inverse; requires a non-zero constant term.
    TruncatedPoly inverse() const {
        const double c0 = c_[0];
        TruncatedPoly h(basis_);  // h = 1 - p / c0, no constant term
        for (std::size_t k = 1; k < c_.size(); ++k) h.c_[k] = -c_[k] / c0;
        TruncatedPoly r = constant(basis_, 1.0);
        for (int k = 0; k < basis_->max_weight(); ++k) {
            r = h * r;
            r.c_[0] += 1.0;
        }
        for (double& v : r.c_) v /= c0;
        return r;
    }

private:
    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<double> c_;
};

}  // namespace gnt::detail
