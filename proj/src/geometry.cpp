#include "gnt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gnt/errors.hpp"

namespace gnt {

std::string Ambient::to_string() const {
    return (kind == AmbientKind::sphere ? "sphere(" : "euclidean(") + std::to_string(n) + ")";
}

ParamGrid make_grid(const Immersion& immersion, std::span<const int> counts) {
    const auto dom = immersion.domain();
    if (counts.size() != dom.size())
        throw PreconditionError(immersion.name() + " needs " + std::to_string(dom.size()) + " grid axes");
    std::vector<Axis> axes;
    for (std::size_t i = 0; i < dom.size(); ++i) axes.push_back(Axis::make(dom[i].rule, counts[i], dom[i].a, dom[i].b));
    return ParamGrid(std::move(axes));
}

void check_grid(const Immersion& immersion, const ParamGrid& grid) {
    const auto dom = immersion.domain();
    if (static_cast<std::size_t>(grid.m()) != dom.size())
        throw PreconditionError(immersion.name() + " needs " + std::to_string(dom.size()) + " grid axes");
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const auto& axis = grid.axes()[i];
        if (axis.rule != dom[i].rule || std::abs(axis.a - dom[i].a) > 1e-14 || std::abs(axis.b - dom[i].b) > 1e-14)
            throw PreconditionError("grid axis " + std::to_string(i) + " does not match the domain of " +
                                    immersion.name());
    }
}

NodeData node_data(const ImmersionJet& jet, std::span<const double> x, double weight) {
    const int m = static_cast<int>(x.size());
    const int n = static_cast<int>(jet.position.size());
    const int q = static_cast<int>(jet.frame.size());
    NodeData d;
    d.x.assign(x.begin(), x.end());
    d.weight = weight;
    d.position.resize(n);
    d.tangent.resize(n, m);
    d.second.assign(static_cast<std::size_t>(m), Eigen::MatrixXd(n, m));
    for (int c = 0; c < n; ++c) {
        const Jet& p = jet.position[static_cast<std::size_t>(c)];
        if (p.order() < 2) throw PreconditionError("position jets must be exact to second order");
        d.position(c) = p.value();
        for (int i = 0; i < m; ++i) {
            d.tangent(c, i) = p.d(i);
            for (int k = 0; k < m; ++k) d.second[static_cast<std::size_t>(i)](c, k) = p.d(i, k);
        }
    }
    d.frame.resize(n, q);
    bool derivatives = q > 0;
    for (int a = 0; a < q; ++a) {
        const auto& nu = jet.frame[static_cast<std::size_t>(a)];
        if (static_cast<int>(nu.size()) != n) throw PreconditionError("frame vectors have the wrong length");
        for (int c = 0; c < n; ++c) {
            d.frame(c, a) = nu[static_cast<std::size_t>(c)].value();
            derivatives = derivatives && nu[static_cast<std::size_t>(c)].order() >= 1;
        }
    }
    if (derivatives) {
        d.frame_derivative.assign(static_cast<std::size_t>(m), Eigen::MatrixXd(n, q));
        for (int i = 0; i < m; ++i)
            for (int a = 0; a < q; ++a)
                for (int c = 0; c < n; ++c)
                    d.frame_derivative[static_cast<std::size_t>(i)](c, a) =
                        jet.frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)].d(i);
    }
    return d;
}

Sample sample(const Immersion& immersion, const ParamGrid& grid) {
    check_grid(immersion, grid);
    Sample s;
    s.m = immersion.m();
    s.q = immersion.q();
    s.ambient = immersion.ambient();
    s.nodes.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.node(k);
        s.nodes.push_back(node_data(immersion.evaluate(x), x, grid.weight(k)));
    }
    return s;
}

NodeGeometry node_geometry(const NodeData& node) {
    const int m = static_cast<int>(node.tangent.cols());
    const int q = static_cast<int>(node.frame.cols());
    NodeGeometry geo;
    geo.g = node.tangent.transpose() * node.tangent;
    Eigen::LLT<Matrix> llt(geo.g);
    if (llt.info() != Eigen::Success) throw NumericalError("degenerate immersion: Gram matrix is not positive definite");
    geo.g_inv = llt.solve(Matrix::Identity(m, m));
    const auto& chol = llt.matrixL();
    geo.sqrt_det = 1;
    for (int i = 0; i < m; ++i) geo.sqrt_det *= chol(i, i);

    std::vector<Matrix> shape;
    for (int a = 0; a < q; ++a) {
        Matrix b(m, m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) b(i, k) = node.second[static_cast<std::size_t>(i)].col(k).dot(node.frame.col(a));
        geo.second_form.push_back(b);
        shape.push_back(geo.g_inv * b);
    }
    geo.shape = EndoTuple(std::move(shape));

    // Gamma_{ij,k} = <d_i d_j psi, d_k psi>, raised with g^{-1}.
    geo.christoffel.assign(static_cast<std::size_t>(m), Matrix::Zero(m, m));
    for (int i = 0; i < m; ++i) {
        const Matrix gamma_lower = node.second[static_cast<std::size_t>(i)].transpose() * node.tangent;  // (j, k)
        const Matrix raised = gamma_lower * geo.g_inv;                                                  // (j, l)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) geo.christoffel[static_cast<std::size_t>(l)](i, j) = raised(j, l);
    }

    if (!node.frame_derivative.empty()) {
        for (int i = 0; i < m; ++i)
            geo.connection.push_back(node.frame_derivative[static_cast<std::size_t>(i)].transpose() * node.frame);
    }
    return geo;
}

std::vector<NodeGeometry> geometry(const Sample& sample) {
    std::vector<NodeGeometry> out;
    out.reserve(sample.nodes.size());
    for (const auto& node : sample.nodes) out.push_back(node_geometry(node));
    return out;
}

ValidationReport validate(const Sample& sample, const std::vector<NodeGeometry>& geom) {
    ValidationReport r;
    r.min_metric_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sample.nodes.size(); ++k) {
        const auto& node = sample.nodes[k];
        const auto& geo = geom[k];
        const int q = static_cast<int>(node.frame.cols());
        const Matrix gram = node.frame.transpose() * node.frame;
        r.frame_orthonormality = std::max(r.frame_orthonormality, (gram - Matrix::Identity(q, q)).cwiseAbs().maxCoeff());
        r.frame_tangency = std::max(r.frame_tangency, (node.frame.transpose() * node.tangent).cwiseAbs().maxCoeff());
        if (sample.ambient.kind == AmbientKind::sphere) {
            double c = std::abs(node.position.norm() - 1);
            c = std::max(c, (node.position.transpose() * node.tangent).cwiseAbs().maxCoeff());
            c = std::max(c, (node.position.transpose() * node.frame).cwiseAbs().maxCoeff());
            r.sphere_constraint = std::max(r.sphere_constraint, c);
        }
        for (const auto& a : geo.shape.matrices()) {
            const Matrix ga = geo.g * a;
            r.self_adjointness = std::max(r.self_adjointness, (ga - ga.transpose()).cwiseAbs().maxCoeff());
        }
        for (const auto& c : geo.connection)
            r.connection_antisymmetry = std::max(r.connection_antisymmetry, (c + c.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Matrix> eig(geo.g, Eigen::EigenvaluesOnly);
        r.min_metric_eigenvalue = std::min(r.min_metric_eigenvalue, eig.eigenvalues().minCoeff());
    }
    return r;
}

double flatness_residual(const std::vector<NodeGeometry>& geom) {
    double r = 0;
    for (const auto& geo : geom) {
        const auto& a = geo.shape;
        for (int x = 0; x < a.q(); ++x)
            for (int y = x + 1; y < a.q(); ++y)
                r = std::max(r, (a[x] * a[y] - a[y] * a[x]).cwiseAbs().maxCoeff());
        // Diagonal entries vanish by orthonormality; validate() reports them.
        for (const auto& c : geo.connection)
            for (int x = 0; x < c.rows(); ++x)
                for (int y = 0; y < c.cols(); ++y)
                    if (x != y) r = std::max(r, std::abs(c(x, y)));
    }
    return r;
}

std::vector<SigmaTable> sigma_tables(const std::vector<NodeGeometry>& geom) {
    std::vector<SigmaTable> out;
    out.reserve(geom.size());
    for (const auto& geo : geom) out.push_back(sigma_by_determinant(geo.shape));
    return out;
}

std::vector<double> sigma_field(const std::vector<SigmaTable>& sigma, const MultiIndex& u) {
    std::vector<double> f;
    f.reserve(sigma.size());
    for (const auto& s : sigma) {
        if (s.q() != u.q()) throw PreconditionError("multi-index length does not match the codimension");
        f.push_back(s(u));
    }
    return f;
}

double integrate(const Sample& sample, const std::vector<NodeGeometry>& geom, std::span<const double> f) {
    if (f.size() != sample.nodes.size() || geom.size() != sample.nodes.size())
        throw PreconditionError("field size does not match the sample");
    double total = 0;
    for (std::size_t k = 0; k < f.size(); ++k) total += sample.nodes[k].weight * f[k] * geom[k].sqrt_det;
    return total;
}

Discretization discretize(Sample s) {
    if (s.m < 1 || s.m > kMaxGeometryDim) throw LimitError("submanifold dimension must be 1..3");
    if (s.q < 1 || s.q > kMaxCodim) throw LimitError("codimension must be 1..4");
    if (s.ambient.n > kMaxAmbientDim) throw LimitError("ambient dimension is limited to 8");
    Discretization d;
    d.geom = geometry(s);
    d.sigma = sigma_tables(d.geom);
    d.sample = std::move(s);
    return d;
}

Discretization discretize(const Immersion& immersion, const ParamGrid& grid) {
    return discretize(sample(immersion, grid));
}

double functional(const Discretization& d, const MultiIndex& u) {
    const auto f = sigma_field(d.sigma, u);
    return integrate(d.sample, d.geom, f);
}

}  // namespace gnt
