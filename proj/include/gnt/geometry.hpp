#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gnt/grid.hpp"
#include "gnt/jet.hpp"
#include "gnt/newton.hpp"

namespace gnt {

inline constexpr int kMaxGeometryDim = 3;
inline constexpr int kMaxAmbientDim = 8;

enum class AmbientKind { euclidean, sphere };

// Euclidean space R^n (c = 0) or the unit sphere S^n (c = 1), the latter
// realized extrinsically in R^{n+1}.
struct Ambient {
    AmbientKind kind = AmbientKind::euclidean;
    int n = 0;

    double curvature() const { return kind == AmbientKind::sphere ? 1.0 : 0.0; }
    int embedding_dim() const { return kind == AmbientKind::sphere ? n + 1 : n; }
    std::string to_string() const;
};

// Jets of the position and of an orthonormal normal frame at one point.
struct ImmersionJet {
    std::vector<Jet> position;            // embedding_dim components
    std::vector<std::vector<Jet>> frame;  // frame[alpha][component]
};

struct AxisDomain {
    AxisRule rule;
    double a;
    double b;
};

// A closed immersed submanifold given by a chart whose jets can be evaluated
// anywhere in its parameter domain.
class Immersion {
public:
    virtual ~Immersion() = default;

    virtual std::string name() const = 0;
    virtual int m() const = 0;
    virtual Ambient ambient() const = 0;
    virtual std::vector<AxisDomain> domain() const = 0;
    virtual ImmersionJet evaluate(std::span<const double> x) const = 0;

    int q() const { return ambient().n - m(); }
};

// Grid on the immersion's parameter domain with the given node counts.
ParamGrid make_grid(const Immersion& immersion, std::span<const int> counts);

// Throws PreconditionError unless every axis of the grid matches the domain.
void check_grid(const Immersion& immersion, const ParamGrid& grid);

// Point data at one grid node. Ambient vectors are columns.
struct NodeData {
    std::vector<double> x;
    double weight = 0;
    Eigen::VectorXd position;
    Eigen::MatrixXd tangent;                       // column i = d_i psi
    std::vector<Eigen::MatrixXd> second;           // second[i].col(k) = d_i d_k psi
    Eigen::MatrixXd frame;                         // column alpha = nu^alpha
    std::vector<Eigen::MatrixXd> frame_derivative;  // [i].col(alpha) = d_i nu^alpha; may be empty
};

// A discretized immersion. `analytic` is false for user-sampled data whose
// derivatives came from finite differences.
struct Sample {
    int m = 0;
    int q = 0;
    Ambient ambient;
    bool analytic = true;
    std::vector<NodeData> nodes;
};

NodeData node_data(const ImmersionJet& jet, std::span<const double> x, double weight);
Sample sample(const Immersion& immersion, const ParamGrid& grid);

// Induced geometry at a node.
struct NodeGeometry {
    Matrix g;
    Matrix g_inv;
    double sqrt_det = 0;
    std::vector<Matrix> second_form;  // B_alpha(i,k) = <d_i d_k psi, nu^alpha>
    EndoTuple shape;                  // A_alpha = g^{-1} B_alpha
    std::vector<Matrix> christoffel;  // christoffel[l](i,j) = Gamma^l_{ij}
    std::vector<Matrix> connection;   // connection[i](alpha,beta) = <d_i nu^alpha, nu^beta>; may be empty

    NodeGeometry() : shape(EndoTuple::zero(1, 1)) {}
};

// Metric, shape tuple, Christoffel symbols and normal connection at a node.
// For the sphere the ambient covariant derivative of d_k psi along d_i differs
// from d_i d_k psi by g_ik psi, which is orthogonal to every nu^alpha, so the
// same inner product gives the shape operators and, projected on the
// tangent space, the Christoffel symbols. Throws NumericalError if the Gram
// matrix is not positive definite.
NodeGeometry node_geometry(const NodeData& node);

std::vector<NodeGeometry> geometry(const Sample& sample);

struct ValidationReport {
    double frame_orthonormality = 0;   // max |<nu^a, nu^b> - delta_ab|
    double frame_tangency = 0;         // max |<nu^a, d_i psi>|
    double sphere_constraint = 0;      // max of ||psi| - 1|, |<psi, d_i psi>|, |<psi, nu^a>| (sphere only)
    double self_adjointness = 0;       // max |g A - (g A)^T|
    double connection_antisymmetry = 0;
    double min_metric_eigenvalue = 0;
};

ValidationReport validate(const Sample& sample, const std::vector<NodeGeometry>& geom);

// max over nodes of max |[A_a, A_b]| entries and |c_{i a b}|, a != b, when
// frame derivatives are available. Zero certifies a parallel frame.
double flatness_residual(const std::vector<NodeGeometry>& geom);

std::vector<SigmaTable> sigma_tables(const std::vector<NodeGeometry>& geom);
std::vector<double> sigma_field(const std::vector<SigmaTable>& sigma, const MultiIndex& u);

// sum_nodes weight * f * sqrt(det g), accumulated in node order.
double integrate(const Sample& sample, const std::vector<NodeGeometry>& geom, std::span<const double> f);

// Sample plus its geometry, computed once.
struct Discretization {
    Sample sample;
    std::vector<NodeGeometry> geom;
    std::vector<SigmaTable> sigma;
};

Discretization discretize(const Immersion& immersion, const ParamGrid& grid);
Discretization discretize(Sample sample);

// Integral of sigma_u dV.
double functional(const Discretization& d, const MultiIndex& u);

}  // namespace gnt
