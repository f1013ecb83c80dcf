#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gnt/multiindex.hpp"

namespace gnt {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

inline constexpr int kMaxCodim = 4;
inline constexpr int kMaxDim = 8;

// A q-tuple (A_1, ..., A_q) of m x m real endomorphisms.
class EndoTuple {
public:
    explicit EndoTuple(std::vector<Matrix> matrices);
    static EndoTuple zero(int q, int m);

    int q() const { return static_cast<int>(matrices_.size()); }
    int m() const { return static_cast<int>(matrices_.front().rows()); }
    const Matrix& operator[](int axis) const { return matrices_[static_cast<std::size_t>(axis)]; }
    const std::vector<Matrix>& matrices() const { return matrices_; }

    // Q A_a Q^{-1} for every a.
    EndoTuple conjugated(const Matrix& q_matrix) const;
    // Entry k of the result is A_{perm[k]}.
    EndoTuple permuted(std::span<const int> perm) const;
    // Linear combination this + t * other.
    EndoTuple plus(double t, const EndoTuple& other) const;

private:
    std::vector<Matrix> matrices_;
};

// sigma_u for weight(u) <= m, stored in graded-lex order. Lookups at weight > m
// or at an absent index return 0.
class SigmaTable {
public:
    SigmaTable(int q, int m, std::vector<double> values);

    int q() const { return basis_->q(); }
    int m() const { return basis_->max_weight(); }
    const MonomialBasis& basis() const { return *basis_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(const MultiIndex& u) const;
    double operator()(const std::optional<MultiIndex>& u) const;

private:
    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<double> values_;
};

// T_u for weight(u) <= m, same ordering and zero conventions as SigmaTable.
class NewtonTable {
public:
    NewtonTable(int q, int m, std::vector<Matrix> values);

    int q() const { return basis_->q(); }
    int m() const { return basis_->max_weight(); }
    const MonomialBasis& basis() const { return *basis_; }
    const std::vector<Matrix>& values() const { return values_; }

    Matrix operator()(const MultiIndex& u) const;
    Matrix operator()(const std::optional<MultiIndex>& u) const;

private:
    std::shared_ptr<const MonomialBasis> basis_;
    std::vector<Matrix> values_;
};

// Coefficients of det(I + t_1 A_1 + ... + t_q A_q) by Gaussian elimination
// over the polynomial ring truncated above total degree m. Every pivot has
// constant term 1, so elimination needs no pivoting and no division by a
// non-unit.
SigmaTable sigma_by_determinant(const EndoTuple& a);

struct InterpolationResult {
    SigmaTable table;
    // 2-norm condition number of the evaluation (Vandermonde) system.
    double condition = 1.0;
    // Largest recovered coefficient of total degree > m; should be round-off.
    double truncation_residual = 0.0;
};

// Same coefficients from point values: det(I + tA) is sampled on the tensor
// grid t_a = rho * exp(2 pi i k_a / (m+1)), k_a = 0..m, and the tensor
// Vandermonde system is solved through its unitary inverse (a q-dimensional
// DFT). Throws NumericalError if the system is ill-conditioned.
InterpolationResult sigma_by_interpolation(const EndoTuple& a, double radius = 1.0);

// T_0 = I, T_u = sigma_u I - sum_a A_a T_{a_flat(u)} in increasing weight.
NewtonTable gnt_by_recurrence(const EndoTuple& a, const SigmaTable& sigma);

// T_u = sum over selection words i with weight(i) <= u of
// (-1)^{|i|} sigma_{u - weight(i)} A^{i}.
Matrix gnt_by_explicit_sum(const EndoTuple& a, const SigmaTable& sigma, const MultiIndex& u);

// The same sum for every u at once, sharing the word products.
NewtonTable gnt_table_by_explicit_sum(const EndoTuple& a, const SigmaTable& sigma);

// lhs/rhs of an identity with the scale used to make the residual relative.
// The scale covers both sides and the magnitudes of the individual summands,
// so identities that cancel to ~0 are judged against their ingredients.
struct Comparison {
    double lhs = 0;
    double rhs = 0;
    double scale = 0;

    double residual() const;
    static Comparison of(double lhs, double rhs, double extra_scale = 0);
};

using TupleCurve = std::function<EndoTuple(double)>;

struct ChainRuleResult {
    MultiIndex u;
    double fd_derivative = 0;  // d sigma_u / dt at 0, extrapolated
    double trace_sum = 0;      // sum_a tr(A_a'(0) T_{a_flat(u)})
    double fd_error = 0;       // extrapolation disagreement
    Comparison comparison;
};

// d sigma_u/dt against sum_a tr(A_a' T_{a_flat(u)}) at t = 0 for every u with
// weight <= m. The derivative of the curve is taken from `derivative` when
// supplied, else by extrapolated central differences.
std::vector<ChainRuleResult> gnt_chain_rule_check(const TupleCurve& curve,
                                                  const std::optional<EndoTuple>& derivative = std::nullopt,
                                                  double h0 = 0.1, int levels = 4);

ChainRuleResult gnt_chain_rule_check(const TupleCurve& curve, const MultiIndex& u,
                                     const std::optional<EndoTuple>& derivative = std::nullopt);

struct TraceIdentity {
    MultiIndex u;
    Comparison weighted_sigma;  // |u| sigma_u = sum_a tr(A_a T_{a_flat(u)})
    Comparison trace;           // tr T_u = (m - |u|) sigma_u
};

std::vector<TraceIdentity> trace_identity_check(const EndoTuple& a, const SigmaTable& sigma,
                                                const NewtonTable& t);

// <lambda, u> = sum_a lambda_a u_a
double pairing(std::span<const double> lambda, const MultiIndex& u);

// lhs = sum_{a,b} lambda_b tr(A_a A_b T_{b_flat a_flat(u)})
// rhs = -<lambda,u> sigma_u + sum_b lambda_b tr(A_b) sigma_{b_flat(u)}
Comparison weighted_recurrence_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t,
                        std::span<const double> lambda, const MultiIndex& u);
Comparison weighted_recurrence_check(const EndoTuple& a, std::span<const double> lambda, const MultiIndex& u);

// sum_b lambda_b tr(A_b T_{b_flat(u)}) against <lambda,u> sigma_u
Comparison weighted_trace_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t,
                                std::span<const double> lambda, const MultiIndex& u);
Comparison weighted_trace_check(const EndoTuple& a, std::span<const double> lambda, const MultiIndex& u);

// How the pairing <lambda, b_sharp(u)> sigma_{b_sharp(u)} is contracted.
//   componentwise: sum_b lambda_b (u_b + 1) sigma_{b_sharp(u)}
//   literal:       sum_b <lambda, b_sharp(u)> sigma_{b_sharp(u)}
enum class Reading { componentwise, literal };

Reading parse_reading(std::string_view tag);

// Readings a run asserts. both: componentwise asserted, literal reported as
// informational.
enum class ReadingChoice { componentwise, literal, both };
std::string_view to_string(Reading reading);

double contraction_term(const SigmaTable& sigma, std::span<const double> lambda, const MultiIndex& u,
                        Reading reading);

// lhs = sum_{a,b} lambda_b tr(A_a A_b T_{a_flat(u)})
// rhs = -contraction_term(reading) + sum_b lambda_b tr(A_b) sigma_u
Comparison variation_algebra_check(const EndoTuple& a, const SigmaTable& sigma, const NewtonTable& t,
                                   std::span<const double> lambda, const MultiIndex& u, Reading reading);
Comparison variation_algebra_check(const EndoTuple& a, std::span<const double> lambda, const MultiIndex& u,
                                   Reading reading);

}  // namespace gnt
