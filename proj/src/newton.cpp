#include "gnt/newton.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gnt/errors.hpp"
#include "gnt/richardson.hpp"
#include "truncated_poly.hpp"

namespace gnt {

// ---------------------------------------------------------------------------
// tuple and tables
// ---------------------------------------------------------------------------

EndoTuple::EndoTuple(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.empty()) throw PreconditionError("endomorphism tuple needs q >= 1 matrices");
    const auto m = matrices_.front().rows();
    if (m < 1) throw PreconditionError("endomorphisms need dimension m >= 1");
    for (const auto& a : matrices_) {
        if (a.rows() != m || a.cols() != m)
            throw PreconditionError("all endomorphisms must be square with a common dimension");
        if (!a.allFinite()) throw PreconditionError("endomorphism has non-finite entries");
    }
}

EndoTuple EndoTuple::zero(int q, int m) {
    return EndoTuple(std::vector<Matrix>(static_cast<std::size_t>(q), Matrix::Zero(m, m)));
}

EndoTuple EndoTuple::conjugated(const Matrix& q_matrix) const {
    const Matrix inv = q_matrix.inverse();
    std::vector<Matrix> out;
    for (const auto& a : matrices_) out.push_back(q_matrix * a * inv);
    return EndoTuple(std::move(out));
}

EndoTuple EndoTuple::permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != q()) throw PreconditionError("permutation has wrong length");
    std::vector<Matrix> out;
    for (int k : perm) out.push_back((*this)[k]);
    return EndoTuple(std::move(out));
}

EndoTuple EndoTuple::plus(double t, const EndoTuple& other) const {
    if (other.q() != q() || other.m() != m()) throw PreconditionError("tuple shapes differ");
    std::vector<Matrix> out;
    for (int a = 0; a < q(); ++a) out.push_back((*this)[a] + t * other[a]);
    return EndoTuple(std::move(out));
}

static void check_limits(int q, int m) {
    if (q > kMaxCodim) throw LimitError("q = " + std::to_string(q) + " exceeds the limit q <= 4");
    if (m > kMaxDim) throw LimitError("m = " + std::to_string(m) + " exceeds the limit m <= 8");
}

SigmaTable::SigmaTable(int q, int m, std::vector<double> values)
    : basis_(monomial_basis(q, m)), values_(std::move(values)) {
    if (values_.size() != basis_->size()) throw PreconditionError("sigma table has wrong size");
}

double SigmaTable::operator()(const MultiIndex& u) const {
    auto k = basis_->find(u);
    return k ? values_[*k] : 0.0;
}

double SigmaTable::operator()(const std::optional<MultiIndex>& u) const { return u ? (*this)(*u) : 0.0; }

NewtonTable::NewtonTable(int q, int m, std::vector<Matrix> values)
    : basis_(monomial_basis(q, m)), values_(std::move(values)) {
    if (values_.size() != basis_->size()) throw PreconditionError("Newton table has wrong size");
}

Matrix NewtonTable::operator()(const MultiIndex& u) const {
    auto k = basis_->find(u);
    if (!k) return Matrix::Zero(m(), m());
    return values_[*k];
}

Matrix NewtonTable::operator()(const std::optional<MultiIndex>& u) const {
    return u ? (*this)(*u) : Matrix::Zero(m(), m());
}

// ---------------------------------------------------------------------------
// sigma routes
// ---------------------------------------------------------------------------

SigmaTable sigma_by_determinant(const EndoTuple& a) {
    const int q = a.q();
    const int m = a.m();
    check_limits(q, m);
    auto basis = monomial_basis(q, m);

    using detail::TruncatedPoly;
    std::vector<TruncatedPoly> entries;
    entries.reserve(static_cast<std::size_t>(m * m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            TruncatedPoly p = TruncatedPoly::constant(basis, i == j ? 1.0 : 0.0);
            for (int alpha = 0; alpha < q; ++alpha) p[1 + static_cast<std::size_t>(q - 1 - alpha)] = a[alpha](i, j);
            entries.push_back(std::move(p));
        }
    }
    // Degree-one monomials in graded-lex order are (0,..,0,1), ..., (1,0,..,0),
    // so axis alpha sits at position 1 + (q - 1 - alpha).
    auto at = [&](int i, int j) -> TruncatedPoly& { return entries[static_cast<std::size_t>(i * m + j)]; };

    TruncatedPoly det = TruncatedPoly::constant(basis, 1.0);
    for (int k = 0; k < m; ++k) {
        const TruncatedPoly pivot_inv = at(k, k).inverse();
        for (int i = k + 1; i < m; ++i) {
            const TruncatedPoly factor = at(i, k) * pivot_inv;
            for (int j = k + 1; j < m; ++j) at(i, j).subtract_product(factor, at(k, j));
        }
        det = det * at(k, k);
    }
    return SigmaTable(q, m, det.coefficients());
}

InterpolationResult sigma_by_interpolation(const EndoTuple& a, double radius) {
    const int q = a.q();
    const int m = a.m();
    check_limits(q, m);
    if (!(radius > 0)) throw PreconditionError("interpolation radius must be positive");

    const double condition = std::pow(std::max(radius, 1.0 / radius), q * m);
    if (condition > 1e12)
        throw NumericalError("interpolation system ill-conditioned (condition estimate " +
                             std::to_string(condition) + ")");

    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    const int n = m + 1;
    std::size_t points = 1;
    for (int k = 0; k < q; ++k) points *= static_cast<std::size_t>(n);

    std::vector<cplx> roots(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / n);

    // Flat index p <-> digits (k_0, ..., k_{q-1}), last axis fastest.
    std::vector<std::vector<int>> digits(points, std::vector<int>(static_cast<std::size_t>(q)));
    for (std::size_t p = 0; p < points; ++p) {
        std::size_t rest = p;
        for (int k = q - 1; k >= 0; --k) {
            digits[p][static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
    }

    std::vector<cplx> data(points);
    for (std::size_t p = 0; p < points; ++p) {
        CMatrix mat = CMatrix::Identity(m, m);
        for (int alpha = 0; alpha < q; ++alpha)
            mat += radius * roots[static_cast<std::size_t>(digits[p][static_cast<std::size_t>(alpha)])] *
                   a[alpha].cast<cplx>();
        data[p] = Eigen::PartialPivLU<CMatrix>(mat).determinant();
    }

    // Inverse DFT along each axis in turn. Exponent tuples with every entry
    // <= m are distinguishable on this grid, so nothing aliases.
    std::size_t stride = 1;
    std::vector<cplx> line(static_cast<std::size_t>(n));
    for (int axis = q - 1; axis >= 0; --axis) {
        for (std::size_t p = 0; p < points; ++p) {
            if (digits[p][static_cast<std::size_t>(axis)] != 0) continue;
            for (int e = 0; e < n; ++e) {
                cplx acc = 0;
                for (int k = 0; k < n; ++k)
                    acc += data[p + static_cast<std::size_t>(k) * stride] *
                           std::conj(roots[static_cast<std::size_t>((e * k) % n)]);
                line[static_cast<std::size_t>(e)] = acc / static_cast<double>(n);
            }
            for (int e = 0; e < n; ++e) data[p + static_cast<std::size_t>(e) * stride] = line[static_cast<std::size_t>(e)];
        }
        stride *= static_cast<std::size_t>(n);
    }

    auto basis = monomial_basis(q, m);
    std::vector<double> values(basis->size(), 0.0);
    double max_coefficient = 0.0;
    double truncated = 0.0;
    for (std::size_t p = 0; p < points; ++p) {
        int weight = 0;
        for (int v : digits[p]) weight += v;
        const double coefficient = data[p].real() / std::pow(radius, weight);
        if (weight <= m) {
            values[*basis->find(MultiIndex(digits[p]))] = coefficient;
            max_coefficient = std::max(max_coefficient, std::abs(coefficient));
        } else {
            truncated = std::max(truncated, std::abs(coefficient));
        }
    }
    return {SigmaTable(q, m, std::move(values)), condition, truncated / (max_coefficient + 1e-300)};
}

// ---------------------------------------------------------------------------
// Newton transformation routes
// ---------------------------------------------------------------------------

NewtonTable gnt_by_recurrence(const EndoTuple& a, const SigmaTable& sigma) {
    const int q = a.q();
    const int m = a.m();
    if (sigma.q() != q || sigma.m() != m) throw PreconditionError("sigma table does not match the tuple");
    const auto& basis = sigma.basis();

    std::vector<Matrix> values(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const MultiIndex& u = basis[k];
        Matrix t = sigma.values()[k] * Matrix::Identity(m, m);
        for (int alpha = 0; alpha < q; ++alpha) {
            if (auto lower = flat(alpha, u)) t.noalias() -= a[alpha] * values[*basis.find(*lower)];
        }
        values[k] = std::move(t);
    }
    return NewtonTable(q, m, std::move(values));
}

namespace {

// Depth-first walk over selection words whose letter histogram stays <= bound.
// `visit(histogram, product)` sees every such word once, including the empty one.
template <class Visit>
void walk_words(const EndoTuple& a, std::vector<int>& histogram, const std::vector<int>& bound, const Matrix& product,
                Visit& visit) {
    visit(histogram, product);
    for (int alpha = 0; alpha < a.q(); ++alpha) {
        auto& h = histogram[static_cast<std::size_t>(alpha)];
        if (h >= bound[static_cast<std::size_t>(alpha)]) continue;
        ++h;
        const Matrix next = product * a[alpha];
        walk_words(a, histogram, bound, next, visit);
        --h;
    }
}

}  // namespace

Matrix gnt_by_explicit_sum(const EndoTuple& a, const SigmaTable& sigma, const MultiIndex& u) {
    const int m = a.m();
    if (u.q() != a.q()) throw PreconditionError("multi-index does not match q");
    if (u.weight() > m) throw PreconditionError("explicit sum requires weight(u) <= m");
    Matrix total = Matrix::Zero(m, m);
    std::vector<int> histogram(static_cast<std::size_t>(a.q()), 0);
    auto visit = [&](const std::vector<int>& h, const Matrix& product) {
        std::vector<int> rest(h.size());
        int length = 0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            rest[k] = u.entries()[k] - h[k];
            length += h[k];
        }
        const double s = sigma(MultiIndex(std::move(rest)));
        total += ((length % 2) ? -s : s) * product;
    };
    walk_words(a, histogram, u.entries(), Matrix::Identity(m, m), visit);
    return total;
}

NewtonTable gnt_table_by_explicit_sum(const EndoTuple& a, const SigmaTable& sigma) {
    const int q = a.q();
    const int m = a.m();
    if (sigma.q() != q || sigma.m() != m) throw PreconditionError("sigma table does not match the tuple");
    const auto& basis = sigma.basis();

    // word_sums[v] = sum of A^i over words i with histogram v, |v| <= m
    std::vector<Matrix> word_sums(basis.size(), Matrix::Zero(m, m));
    std::vector<int> histogram(static_cast<std::size_t>(q), 0);
    auto walk = [&](auto&& self, int length, const Matrix& product) -> void {
        word_sums[*basis.find(MultiIndex(histogram))] += product;
        if (length == m) return;
        for (int alpha = 0; alpha < q; ++alpha) {
            ++histogram[static_cast<std::size_t>(alpha)];
            self(self, length + 1, product * a[alpha]);
            --histogram[static_cast<std::size_t>(alpha)];
        }
    };
    walk(walk, 0, Matrix::Identity(m, m));

    std::vector<Matrix> values(basis.size(), Matrix::Zero(m, m));
    for (std::size_t ku = 0; ku < basis.size(); ++ku) {
        const MultiIndex& u = basis[ku];
        for (std::size_t kv = 0; kv < basis.size(); ++kv) {
            const MultiIndex& v = basis[kv];
            if (v.weight() > u.weight()) break;
            std::vector<int> rest(static_cast<std::size_t>(q));
            bool inside = true;
            for (int alpha = 0; alpha < q; ++alpha) {
                rest[static_cast<std::size_t>(alpha)] = u[alpha] - v[alpha];
                if (rest[static_cast<std::size_t>(alpha)] < 0) inside = false;
            }
            if (!inside) continue;
            const double s = sigma(MultiIndex(std::move(rest)));
            values[ku] += ((v.weight() % 2) ? -s : s) * word_sums[kv];
        }
    }
    return NewtonTable(q, m, std::move(values));
}

// ---------------------------------------------------------------------------
// identity checks
// ---------------------------------------------------------------------------

double Comparison::residual() const { return std::abs(lhs - rhs) / (scale + 1e-300); }

Comparison Comparison::of(double lhs, double rhs, double extra_scale) {
    return {lhs, rhs, std::max({std::abs(lhs), std::abs(rhs), extra_scale})};
}

std::vector<ChainRuleResult> gnt_chain_rule_check(const TupleCurve& curve, const std::optional<EndoTuple>& derivative,
                                                  double h0, int levels) {
    const EndoTuple base = curve(0.0);
    const int q = base.q();
    const int m = base.m();

    EndoTuple velocity = EndoTuple::zero(q, m);
    if (derivative) {
        velocity = *derivative;
    } else {
        auto entries = [&](double t) {
            const EndoTuple at = curve(t);
            std::vector<double> flat_entries;
            for (const auto& mat : at.matrices()) flat_entries.insert(flat_entries.end(), mat.data(), mat.data() + mat.size());
            return flat_entries;
        };
        const auto steps = halving_steps(h0, levels);
        const auto d = central_difference(entries, steps);
        std::vector<Matrix> mats;
        for (int alpha = 0; alpha < q; ++alpha)
            mats.push_back(Eigen::Map<const Matrix>(d.value.data() + static_cast<std::ptrdiff_t>(alpha) * m * m, m, m));
        velocity = EndoTuple(std::move(mats));
    }

    const SigmaTable sigma0 = sigma_by_determinant(base);
    const NewtonTable t0 = gnt_by_recurrence(base, sigma0);

    auto sigma_at = [&](double t) { return sigma_by_determinant(curve(t)).values(); };
    const auto steps = halving_steps(h0, levels);
    const auto fd = central_difference(sigma_at, steps);

    std::vector<ChainRuleResult> out;
    const auto& basis = sigma0.basis();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const MultiIndex& u = basis[k];
        double trace_sum = 0;
        double magnitude = 0;
        for (int alpha = 0; alpha < q; ++alpha) {
            const Matrix t = t0(flat(alpha, u));
            trace_sum += (velocity[alpha] * t).trace();
            magnitude += velocity[alpha].norm() * t.norm();
        }
        ChainRuleResult r{u, fd.value[k], trace_sum, fd.error[k], Comparison::of(fd.value[k], trace_sum, magnitude)};
        out.push_back(std::move(r));
    }
    return out;
}

ChainRuleResult gnt_chain_rule_check(const TupleCurve& curve, const MultiIndex& u,
                                     const std::optional<EndoTuple>& derivative) {
    auto all = gnt_chain_rule_check(curve, derivative);
    for (auto& r : all)
        if (r.u == u) return r;
    throw PreconditionError("chain rule check requires weight(u) <= m");
}

std::vector<TraceIdentity> trace_identity_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t) {
    const int q = a.q();
    const int m = a.m();
    std::vector<TraceIdentity> out;
    for (const auto& u : sigma.basis().indices()) {
        double sum = 0;
        double magnitude = 0;
        for (int alpha = 0; alpha < q; ++alpha) {
            const Matrix lower = t(flat(alpha, u));
            sum += (a[alpha] * lower).trace();
            magnitude += a[alpha].norm() * lower.norm();
        }
        const double s = sigma(u);
        const Matrix tu = t(u);
        out.push_back({u, Comparison::of(u.weight() * s, sum, magnitude),
                       Comparison::of(tu.trace(), (m - u.weight()) * s,
                                      std::sqrt(static_cast<double>(m)) * (tu.norm() + magnitude) + m * std::abs(s))});
    }
    return out;
}

double pairing(std::span<const double> lambda, const MultiIndex& u) {
    if (static_cast<int>(lambda.size()) != u.q()) throw PreconditionError("lambda has wrong length");
    double s = 0;
    for (int alpha = 0; alpha < u.q(); ++alpha) s += lambda[static_cast<std::size_t>(alpha)] * u[alpha];
    return s;
}

static void check_lambda(const EndoTuple& a, std::span<const double> lambda) {
    if (static_cast<int>(lambda.size()) != a.q()) throw PreconditionError("lambda must have q entries");
}

Comparison weighted_recurrence_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t,
                        std::span<const double> lambda, const MultiIndex& u) {
    check_lambda(a, lambda);
    const int q = a.q();
    double lhs = 0;
    double magnitude = 0;
    for (int alpha = 0; alpha < q; ++alpha) {
        for (int beta = 0; beta < q; ++beta) {
            const Matrix lower = t(flat(beta, flat(alpha, u)));
            const double l = lambda[static_cast<std::size_t>(beta)];
            lhs += l * (a[alpha] * a[beta] * lower).trace();
            magnitude += std::abs(l) * a[alpha].norm() * a[beta].norm() * lower.norm();
        }
    }
    double rhs = -pairing(lambda, u) * sigma(u);
    magnitude += std::abs(rhs);
    for (int beta = 0; beta < q; ++beta) {
        const double term = lambda[static_cast<std::size_t>(beta)] * a[beta].trace() * sigma(flat(beta, u));
        rhs += term;
        magnitude += std::abs(term);
    }
    return Comparison::of(lhs, rhs, magnitude);
}

Comparison weighted_recurrence_check(const EndoTuple& a, std::span<const double> lambda, const MultiIndex& u) {
    const SigmaTable sigma = sigma_by_determinant(a);
    return weighted_recurrence_check(a, sigma, gnt_by_recurrence(a, sigma), lambda, u);
}

Comparison weighted_trace_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t,
                                std::span<const double> lambda, const MultiIndex& u) {
    check_lambda(a, lambda);
    double lhs = 0;
    double magnitude = 0;
    for (int beta = 0; beta < a.q(); ++beta) {
        const Matrix lower = t(flat(beta, u));
        const double l = lambda[static_cast<std::size_t>(beta)];
        lhs += l * (a[beta] * lower).trace();
        magnitude += std::abs(l) * a[beta].norm() * lower.norm();
    }
    return Comparison::of(lhs, pairing(lambda, u) * sigma(u), magnitude);
}

Comparison weighted_trace_check(const EndoTuple& a, std::span<const double> lambda, const MultiIndex& u) {
    const SigmaTable sigma = sigma_by_determinant(a);
    return weighted_trace_check(a, sigma, gnt_by_recurrence(a, sigma), lambda, u);
}

Reading parse_reading(std::string_view tag) {
    if (tag == "componentwise") return Reading::componentwise;
    if (tag == "literal") return Reading::literal;
    throw ParseError("unknown contraction reading '" + std::string(tag) + "' (expected componentwise or literal)");
}

std::string_view to_string(Reading reading) {
    return reading == Reading::componentwise ? "componentwise" : "literal";
}

double contraction_term(const SigmaTable& sigma, std::span<const double> lambda, const MultiIndex& u,
                        Reading reading) {
    if (static_cast<int>(lambda.size()) != u.q()) throw PreconditionError("lambda must have q entries");
    double total = 0;
    for (int beta = 0; beta < u.q(); ++beta) {
        const MultiIndex up = sharp(beta, u);
        const double s = sigma(up);
        if (reading == Reading::componentwise)
            total += lambda[static_cast<std::size_t>(beta)] * (u[beta] + 1) * s;
        else
            total += pairing(lambda, up) * s;
    }
    return total;
}

Comparison variation_algebra_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t,
                                   std::span<const double> lambda, const MultiIndex& u, Reading reading) {
    check_lambda(a, lambda);
    const int q = a.q();
    double lhs = 0;
    double magnitude = 0;
    for (int alpha = 0; alpha < q; ++alpha) {
        const Matrix lower = t(flat(alpha, u));
        for (int beta = 0; beta < q; ++beta) {
            const double l = lambda[static_cast<std::size_t>(beta)];
            lhs += l * (a[alpha] * a[beta] * lower).trace();
            magnitude += std::abs(l) * a[alpha].norm() * a[beta].norm() * lower.norm();
        }
    }
    const double contraction = contraction_term(sigma, lambda, u, reading);
    double rhs = -contraction;
    magnitude += std::abs(contraction);
    for (int beta = 0; beta < q; ++beta) {
        const double term = lambda[static_cast<std::size_t>(beta)] * a[beta].trace() * sigma(u);
        rhs += term;
        magnitude += std::abs(term);
    }
    return Comparison::of(lhs, rhs, magnitude);
}

Comparison variation_algebra_check(const EndoTuple& a, std::span<const double> lambda, const MultiIndex& u,
                                   Reading reading) {
    const SigmaTable sigma = sigma_by_determinant(a);
    return variation_algebra_check(a, sigma, gnt_by_recurrence(a, sigma), lambda, u, reading);
}

}  // namespace gnt
