#pragma once

#include <span>
#include <vector>

#include "gnt/geometry.hpp"
#include "gnt/newton.hpp"
#include "gnt/random.hpp"

namespace gnt {

// coefficient * cos(k . x) or coefficient * sin(k . x)
struct TrigTerm {
    double coefficient = 0;
    std::vector<int> frequency;
    bool sine = false;
};

// constant + sum of trigonometric terms in the chart parameters.
struct ScalarField {
    double constant = 0;
    std::vector<TrigTerm> terms;

    static ScalarField constant_field(double c) { return ScalarField{c, {}}; }

    Jet jet(std::span<const Jet> vars) const;
    double value(std::span<const double> x) const;
    bool is_zero() const;
    ScalarField scaled(double s) const;
    ScalarField plus(const ScalarField& other) const;
};

// Variation vector X = lambda_b nu^b + mu^l d_l psi.
struct VariationField {
    std::vector<ScalarField> normal;      // lambda, q entries
    std::vector<ScalarField> tangential;  // mu, m entries

    static VariationField constant(std::vector<double> lambda, std::vector<double> mu);
    static VariationField zero(int q, int m);

    VariationField scaled(double s) const;
    VariationField plus(const VariationField& other) const;
    VariationField normal_part() const;
    VariationField tangential_part() const;

    // Throws PreconditionError unless the shape matches (q, m).
    void check(int q, int m) const;
};

// lambda_b and mu^l: constant term uniform in [-a, a] plus every frequency
// vector with entries in [-max_frequency, max_frequency] (first nonzero entry
// positive) with uniform cos and sin coefficients scaled by a / (1 + |k|^2).
VariationField random_field(Rng& rng, int q, int m, int max_frequency, double normal_amplitude,
                            double tangential_amplitude);

// psi_t = psi + t X (Euclidean) or (psi + t X) / |psi + t X| (sphere), sampled
// on a fixed grid. The frame at t is the t = 0 frame projected onto the new
// normal space and re-orthonormalized by Gram-Schmidt, which leaves no
// first-order rotation of the frame inside the normal bundle.
class DeformedFamily {
public:
    DeformedFamily(const Immersion& immersion, const ParamGrid& grid, const VariationField& field);

    int m() const { return m_; }
    int q() const { return q_; }
    Sample at(double t) const;

    // lambda and mu with their first derivatives at each node.
    struct NodeField {
        std::vector<double> lambda;
        std::vector<double> mu;
        Matrix dmu;  // dmu(l, i) = d_i mu^l
    };
    const std::vector<NodeField>& field() const { return field_; }

private:
    struct NodeJets {
        std::vector<double> x;
        double weight;
        std::vector<Jet> position;
        std::vector<Jet> velocity;
        Eigen::MatrixXd frame;
    };

    Ambient ambient_;
    int m_ = 0;
    int q_ = 0;
    std::vector<NodeJets> nodes_;
    std::vector<NodeField> field_;
};

std::vector<double> default_fd_steps();

// First-variation integrand in a space form of curvature c, integrated:
//   -contraction_term(sigma, lambda, u, reading) + c (m + 1 - |u|) sum_a lambda_a sigma_{a_flat(u)}
// Tangential components do not contribute on a closed manifold.
// Throws PreconditionError if c differs from the ambient curvature, or if
// q >= 2 and the frame is not certified parallel (flatness > 1e-8).
double analytic_first_variation(const Discretization& d, const VariationField& field, const MultiIndex& u, double c,
                                Reading reading);

struct FdVariation {
    double value = 0;
    double error = 0;  // disagreement of the last two extrapolation levels
    bool converged = true;
    std::vector<double> steps;
    std::vector<double> central;  // raw central difference per step
};

// d/dt of the integral of sigma_u over the deformed family at t = 0,
// central differences extrapolated in h^2.
FdVariation fd_first_variation(const Immersion& immersion, const ParamGrid& grid, const VariationField& field,
                               const MultiIndex& u, std::span<const double> steps = {});

struct FieldCheck {
    double residual = 0;  // max |fd - analytic| / magnitude
    double magnitude = 0;  // max of |fd|, |analytic| and the field itself at t = 0
    double max_abs_difference = 0;
    double fd_error = 0;  // largest extrapolation disagreement
    bool converged = true;
};

// d g^{jk}/dt against -g^{jl} g^{pk} (mu_{p,l} + mu_{l,p} - 2 lambda_b (A_b)_{pl})
// with mu_{p,l} = g_{pq} (d_l mu^q + Gamma^q_{ls} mu^s).
FieldCheck metric_variation_check(const Immersion& immersion, const ParamGrid& grid, const VariationField& field,
                                  std::span<const double> steps = {});

// d sqrt(det g)/dt against (-lambda_a tr A_a + mu^l_{,l}) sqrt(det g) with
// mu^l_{,l} = d_l mu^l + Gamma^l_{lk} mu^k.
FieldCheck volume_variation_check(const Immersion& immersion, const ParamGrid& grid, const VariationField& field,
                                  std::span<const double> steps = {});

struct MinimalityReport {
    double minimality_residual = 0;  // Euclidean: max |sigma_v|, |v| = |u| + 1; sphere: see below
    std::vector<MultiIndex> checked;  // the v (Euclidean) examined
    double identity_residual = 0;     // Euclidean: max |<V, N> - contraction(e_g)|, relative
    double off_direction_residual = 0;  // Euclidean: max |V - <V, N> N| over frame directions N
    bool minimal = false;
};

// V = psi_{,ij} T_u^{ij} with psi_{,ij} = d_i d_j psi - Gamma^l_ij d_l psi and
// T^{ij} = (T_u)^i_k g^{kj}, compared with contraction_term along each N = nu^g.
// `minimal` means minimality_residual <= tolerance.
MinimalityReport euclidean_minimality(const Discretization& d, const MultiIndex& u, Reading reading,
                                      double tolerance = 1e-10);

// max over nodes and g of |contraction(e_g) - (m + 1 - |u|) sigma_{g_flat(u)}|.
MinimalityReport sphere_minimality(const Discretization& d, const MultiIndex& u, Reading reading,
                                   double tolerance = 1e-10);

}  // namespace gnt
