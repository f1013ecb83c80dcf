#include "gnt/variation.hpp"

#include <algorithm>
#include <cmath>

#include "gnt/errors.hpp"
#include "gnt/richardson.hpp"

namespace gnt {

namespace {

double phase(const std::vector<int>& k, std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * x[i];
    return s;
}

void check_frequency(const TrigTerm& term, std::size_t m) {
    if (term.frequency.size() != m) throw PreconditionError("trigonometric term frequency has the wrong length");
}

std::vector<double> values_at(const std::vector<ScalarField>& fields, std::span<const double> x) {
    std::vector<double> out;
    for (const auto& f : fields) out.push_back(f.value(x));
    return out;
}

std::vector<ScalarField> combine(const std::vector<ScalarField>& a, const std::vector<ScalarField>& b) {
    if (a.size() != b.size()) throw PreconditionError("variation fields have different shapes");
    std::vector<ScalarField> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i].plus(b[i]));
    return out;
}

std::vector<ScalarField> scale_all(const std::vector<ScalarField>& a, double s) {
    std::vector<ScalarField> out;
    for (const auto& f : a) out.push_back(f.scaled(s));
    return out;
}

std::vector<ScalarField> zeros(std::size_t n) { return std::vector<ScalarField>(n); }

std::span<const double> steps_or_default(std::span<const double> steps, std::vector<double>& storage) {
    if (!steps.empty()) return steps;
    storage = default_fd_steps();
    return storage;
}

}  // namespace

Jet ScalarField::jet(std::span<const Jet> vars) const {
    const int m = static_cast<int>(vars.size());
    Jet out(m, constant);
    for (const auto& term : terms) {
        check_frequency(term, vars.size());
        Jet arg(m, 0.0);
        for (int i = 0; i < m; ++i)
            if (term.frequency[static_cast<std::size_t>(i)] != 0)
                arg += static_cast<double>(term.frequency[static_cast<std::size_t>(i)]) * vars[static_cast<std::size_t>(i)];
        out += term.coefficient * (term.sine ? sin(arg) : cos(arg));
    }
    return out;
}

double ScalarField::value(std::span<const double> x) const {
    double out = constant;
    for (const auto& term : terms) {
        check_frequency(term, x.size());
        const double p = phase(term.frequency, x);
        out += term.coefficient * (term.sine ? std::sin(p) : std::cos(p));
    }
    return out;
}

bool ScalarField::is_zero() const {
    if (constant != 0) return false;
    for (const auto& term : terms)
        if (term.coefficient != 0) return false;
    return true;
}

ScalarField ScalarField::scaled(double s) const {
    ScalarField out{constant * s, terms};
    for (auto& term : out.terms) term.coefficient *= s;
    return out;
}

ScalarField ScalarField::plus(const ScalarField& other) const {
    ScalarField out{constant + other.constant, terms};
    out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
    return out;
}

VariationField VariationField::constant(std::vector<double> lambda, std::vector<double> mu) {
    VariationField f;
    for (double v : lambda) f.normal.push_back(ScalarField::constant_field(v));
    for (double v : mu) f.tangential.push_back(ScalarField::constant_field(v));
    return f;
}

VariationField VariationField::zero(int q, int m) {
    return {zeros(static_cast<std::size_t>(q)), zeros(static_cast<std::size_t>(m))};
}

VariationField VariationField::scaled(double s) const { return {scale_all(normal, s), scale_all(tangential, s)}; }

VariationField VariationField::plus(const VariationField& other) const {
    return {combine(normal, other.normal), combine(tangential, other.tangential)};
}

VariationField VariationField::normal_part() const { return {normal, zeros(tangential.size())}; }

VariationField VariationField::tangential_part() const { return {zeros(normal.size()), tangential}; }

void VariationField::check(int q, int m) const {
    if (static_cast<int>(normal.size()) != q)
        throw PreconditionError("variation field needs " + std::to_string(q) + " normal components");
    if (static_cast<int>(tangential.size()) != m)
        throw PreconditionError("variation field needs " + std::to_string(m) + " tangential components");
    for (const auto* group : {&normal, &tangential})
        for (const auto& f : *group)
            for (const auto& term : f.terms) check_frequency(term, static_cast<std::size_t>(m));
}

VariationField random_field(Rng& rng, int q, int m, int max_frequency, double normal_amplitude,
                            double tangential_amplitude) {
    if (max_frequency < 0 || max_frequency > 8) throw PreconditionError("max_frequency must be 0..8");
    std::vector<std::vector<int>> freqs;
    std::vector<int> k(static_cast<std::size_t>(m), -max_frequency);
    while (true) {
        const auto first = std::find_if(k.begin(), k.end(), [](int v) { return v != 0; });
        if (first != k.end() && *first > 0) freqs.push_back(k);
        int pos = m - 1;
        while (pos >= 0 && k[static_cast<std::size_t>(pos)] == max_frequency) k[static_cast<std::size_t>(pos--)] = -max_frequency;
        if (pos < 0) break;
        ++k[static_cast<std::size_t>(pos)];
    }
    auto draw = [&](double amplitude) {
        if (amplitude == 0) return ScalarField{};
        ScalarField f{amplitude * rng.uniform(-1, 1), {}};
        for (const auto& freq : freqs) {
            double norm2 = 0;
            for (int v : freq) norm2 += v * v;
            const double s = amplitude / (1 + norm2);
            f.terms.push_back({s * rng.uniform(-1, 1), freq, false});
            f.terms.push_back({s * rng.uniform(-1, 1), freq, true});
        }
        return f;
    };
    VariationField out;
    for (int a = 0; a < q; ++a) out.normal.push_back(draw(normal_amplitude));
    for (int l = 0; l < m; ++l) out.tangential.push_back(draw(tangential_amplitude));
    return out;
}

DeformedFamily::DeformedFamily(const Immersion& immersion, const ParamGrid& grid, const VariationField& field)
    : ambient_(immersion.ambient()), m_(immersion.m()), q_(immersion.q()) {
    check_grid(immersion, grid);
    field.check(q_, m_);
    const int n = ambient_.embedding_dim();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.node(k);
        std::vector<Jet> vars;
        for (int i = 0; i < m_; ++i) vars.push_back(Jet::variable(m_, i, x[static_cast<std::size_t>(i)]));
        auto jet = immersion.evaluate(x);

        NodeJets node{x, grid.weight(k), jet.position, std::vector<Jet>(static_cast<std::size_t>(n), Jet(m_, 0.0)),
                      Eigen::MatrixXd(n, q_)};
        NodeField nf{values_at(field.normal, x), values_at(field.tangential, x), Matrix::Zero(m_, m_)};
        for (int a = 0; a < q_; ++a) {
            const Jet lambda = field.normal[static_cast<std::size_t>(a)].jet(vars);
            for (int c = 0; c < n; ++c) {
                const Jet& nu = jet.frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
                node.frame(c, a) = nu.value();
                node.velocity[static_cast<std::size_t>(c)] += lambda * nu;
            }
        }
        for (int l = 0; l < m_; ++l) {
            const Jet mu = field.tangential[static_cast<std::size_t>(l)].jet(vars);
            for (int i = 0; i < m_; ++i) nf.dmu(l, i) = mu.d(i);
            if (field.tangential[static_cast<std::size_t>(l)].is_zero()) continue;
            for (int c = 0; c < n; ++c)
                node.velocity[static_cast<std::size_t>(c)] += mu * jet.position[static_cast<std::size_t>(c)].diff(l);
        }
        nodes_.push_back(std::move(node));
        field_.push_back(std::move(nf));
    }
}

Sample DeformedFamily::at(double t) const {
    Sample s;
    s.m = m_;
    s.q = q_;
    s.ambient = ambient_;
    s.nodes.reserve(nodes_.size());
    const int n = ambient_.embedding_dim();
    for (const auto& node : nodes_) {
        ImmersionJet jet;
        for (int c = 0; c < n; ++c)
            jet.position.push_back(node.position[static_cast<std::size_t>(c)] + t * node.velocity[static_cast<std::size_t>(c)]);
        if (ambient_.kind == AmbientKind::sphere && t != 0) {
            Jet norm2 = jet.position[0] * jet.position[0];
            for (int c = 1; c < n; ++c) norm2 += jet.position[static_cast<std::size_t>(c)] * jet.position[static_cast<std::size_t>(c)];
            const Jet scale = inverse(sqrt(norm2));
            for (auto& p : jet.position) p *= scale;
        }
        NodeData d = node_data(jet, node.x, node.weight);

        // Project the reference frame onto the normal space at t.
        const Eigen::MatrixXd& tan = d.tangent;
        Eigen::MatrixXd frame = node.frame - tan * (tan.transpose() * tan).ldlt().solve(tan.transpose() * node.frame);
        if (ambient_.kind == AmbientKind::sphere) {
            const Eigen::VectorXd p = d.position / d.position.norm();
            frame -= p * (p.transpose() * frame);
        }
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < a; ++b) frame.col(a) -= frame.col(b).dot(frame.col(a)) * frame.col(b);
            const double len = frame.col(a).norm();
            if (!(len > 1e-8)) throw NumericalError("normal frame degenerated along the deformation");
            frame.col(a) /= len;
        }
        d.frame = std::move(frame);
        s.nodes.push_back(std::move(d));
    }
    return s;
}

std::vector<double> default_fd_steps() { return {1e-3, 5e-4, 2.5e-4}; }

double analytic_first_variation(const Discretization& d, const VariationField& field, const MultiIndex& u, double c,
                                Reading reading) {
    const int m = d.sample.m, q = d.sample.q;
    field.check(q, m);
    if (u.q() != q) throw PreconditionError("multi-index length does not match the codimension");
    if (c != d.sample.ambient.curvature())
        throw PreconditionError("ambient curvature c = " + std::to_string(c) + " does not match " +
                                d.sample.ambient.to_string());
    if (q >= 2) {
        const double flat = flatness_residual(d.geom);
        if (!(flat <= 1e-8))
            throw PreconditionError("first variation needs a parallel normal frame; flatness residual " +
                                    std::to_string(flat) + " exceeds 1e-8");
    }
    std::vector<double> integrand;
    integrand.reserve(d.sample.nodes.size());
    for (std::size_t k = 0; k < d.sample.nodes.size(); ++k) {
        const auto lambda = values_at(field.normal, d.sample.nodes[k].x);
        const auto& sigma = d.sigma[k];
        double value = -contraction_term(sigma, lambda, u, reading);
        if (c != 0) {
            double lower = 0;
            for (int a = 0; a < q; ++a) lower += lambda[static_cast<std::size_t>(a)] * sigma(flat(a, u));
            value += c * (m + 1 - u.weight()) * lower;
        }
        integrand.push_back(value);
    }
    return integrate(d.sample, d.geom, integrand);
}

FdVariation fd_first_variation(const Immersion& immersion, const ParamGrid& grid, const VariationField& field,
                               const MultiIndex& u, std::span<const double> steps) {
    if (u.q() != immersion.q()) throw PreconditionError("multi-index length does not match the codimension");
    std::vector<double> storage;
    steps = steps_or_default(steps, storage);
    const DeformedFamily family(immersion, grid, field);
    auto f = [&](double t) { return std::vector<double>{functional(discretize(family.at(t)), u)}; };
    const auto r = central_difference(f, steps);
    FdVariation out;
    out.value = r.value[0];
    out.error = r.error[0];
    out.converged = r.converged;
    out.steps.assign(steps.begin(), steps.end());
    for (const auto& row : r.raw) out.central.push_back(row[0]);
    return out;
}

namespace {

// The scale includes the differentiated quantity at t = 0 so that variations
// that vanish identically are judged against the field, not against noise.
FieldCheck compare_fields(const Extrapolated& fd, const std::vector<double>& analytic, const std::vector<double>& base) {
    FieldCheck out;
    out.converged = fd.converged;
    for (std::size_t k = 0; k < analytic.size(); ++k) {
        out.max_abs_difference = std::max(out.max_abs_difference, std::abs(fd.value[k] - analytic[k]));
        out.magnitude = std::max({out.magnitude, std::abs(analytic[k]), std::abs(fd.value[k]), std::abs(base[k])});
        out.fd_error = std::max(out.fd_error, fd.error[k]);
    }
    out.residual = out.max_abs_difference / (out.magnitude + 1e-300);
    return out;
}

// (d_l mu^q + Gamma^q_{ls} mu^s) as matrix (q, l).
Matrix covariant_mu(const NodeGeometry& geo, const DeformedFamily::NodeField& f) {
    const int m = static_cast<int>(f.mu.size());
    Matrix nabla = f.dmu;
    for (int qq = 0; qq < m; ++qq)
        for (int l = 0; l < m; ++l)
            for (int s = 0; s < m; ++s)
                nabla(qq, l) += geo.christoffel[static_cast<std::size_t>(qq)](l, s) * f.mu[static_cast<std::size_t>(s)];
    return nabla;
}

}  // namespace

FieldCheck metric_variation_check(const Immersion& immersion, const ParamGrid& grid, const VariationField& field,
                                  std::span<const double> steps) {
    std::vector<double> storage;
    steps = steps_or_default(steps, storage);
    const DeformedFamily family(immersion, grid, field);
    const auto base = geometry(family.at(0));
    const int m = family.m();

    std::vector<double> analytic;
    for (std::size_t k = 0; k < base.size(); ++k) {
        const auto& geo = base[k];
        const auto& f = family.field()[k];
        const Matrix lowered = geo.g * covariant_mu(geo, f);  // (p, l) = mu_{p,l}
        Matrix dg = lowered + lowered.transpose();
        for (int b = 0; b < family.q(); ++b) dg -= 2 * f.lambda[static_cast<std::size_t>(b)] * geo.second_form[static_cast<std::size_t>(b)];
        const Matrix dginv = -geo.g_inv * dg * geo.g_inv;
        analytic.insert(analytic.end(), dginv.data(), dginv.data() + m * m);
    }
    auto g_inverse = [&](double t) {
        std::vector<double> out;
        for (const auto& geo : geometry(family.at(t))) out.insert(out.end(), geo.g_inv.data(), geo.g_inv.data() + m * m);
        return out;
    };
    return compare_fields(central_difference(g_inverse, steps), analytic, g_inverse(0.0));
}

FieldCheck volume_variation_check(const Immersion& immersion, const ParamGrid& grid, const VariationField& field,
                                  std::span<const double> steps) {
    std::vector<double> storage;
    steps = steps_or_default(steps, storage);
    const DeformedFamily family(immersion, grid, field);
    const auto base = geometry(family.at(0));
    const int m = family.m();

    std::vector<double> analytic;
    for (std::size_t k = 0; k < base.size(); ++k) {
        const auto& geo = base[k];
        const auto& f = family.field()[k];
        double divergence = 0;
        for (int l = 0; l < m; ++l) {
            divergence += f.dmu(l, l);
            for (int s = 0; s < m; ++s)
                divergence += geo.christoffel[static_cast<std::size_t>(l)](l, s) * f.mu[static_cast<std::size_t>(s)];
        }
        double normal = 0;
        for (int a = 0; a < family.q(); ++a) normal -= f.lambda[static_cast<std::size_t>(a)] * geo.shape[a].trace();
        analytic.push_back((normal + divergence) * geo.sqrt_det);
    }
    auto density = [&](double t) {
        std::vector<double> out;
        for (const auto& geo : geometry(family.at(t))) out.push_back(geo.sqrt_det);
        return out;
    };
    return compare_fields(central_difference(density, steps), analytic, density(0.0));
}

MinimalityReport euclidean_minimality(const Discretization& d, const MultiIndex& u, Reading reading, double tolerance) {
    if (d.sample.ambient.kind != AmbientKind::euclidean)
        throw PreconditionError("Euclidean minimality needs a Euclidean ambient");
    const int m = d.sample.m, q = d.sample.q;
    if (u.q() != q) throw PreconditionError("multi-index length does not match the codimension");
    MinimalityReport r;
    r.checked = enumerate_multiindices_of_weight(q, u.weight() + 1);

    double max_diff = 0, scale = 0;
    for (std::size_t k = 0; k < d.sample.nodes.size(); ++k) {
        const auto& node = d.sample.nodes[k];
        const auto& geo = d.geom[k];
        const auto& sigma = d.sigma[k];
        for (const auto& v : r.checked) r.minimality_residual = std::max(r.minimality_residual, std::abs(sigma(v)));

        const Matrix tu = gnt_by_recurrence(geo.shape, sigma)(u);
        const Matrix upper = tu * geo.g_inv;  // T^{ij}
        Eigen::VectorXd v = Eigen::VectorXd::Zero(node.position.size());
        double magnitude = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Eigen::VectorXd hess = node.second[static_cast<std::size_t>(i)].col(j);
                for (int l = 0; l < m; ++l) hess -= geo.christoffel[static_cast<std::size_t>(l)](i, j) * node.tangent.col(l);
                v += upper(i, j) * hess;
                magnitude += std::abs(upper(i, j)) * hess.norm();
            }
        for (int g = 0; g < q; ++g) {
            std::vector<double> lambda(static_cast<std::size_t>(q), 0.0);
            lambda[static_cast<std::size_t>(g)] = 1.0;
            const Eigen::VectorXd n = node.frame.col(g);
            const double along = v.dot(n);
            const double expected = contraction_term(sigma, lambda, u, reading);
            max_diff = std::max(max_diff, std::abs(along - expected));
            scale = std::max({scale, magnitude, std::abs(expected)});
            r.off_direction_residual = std::max(r.off_direction_residual, (v - along * n).norm());
        }
    }
    r.identity_residual = max_diff / (scale + 1e-300);
    r.minimal = r.minimality_residual <= tolerance;
    return r;
}

MinimalityReport sphere_minimality(const Discretization& d, const MultiIndex& u, Reading reading, double tolerance) {
    if (d.sample.ambient.kind != AmbientKind::sphere) throw PreconditionError("spherical minimality needs a sphere ambient");
    const int m = d.sample.m, q = d.sample.q;
    if (u.q() != q) throw PreconditionError("multi-index length does not match the codimension");
    MinimalityReport r;
    for (const auto& sigma : d.sigma) {
        for (int g = 0; g < q; ++g) {
            std::vector<double> lambda(static_cast<std::size_t>(q), 0.0);
            lambda[static_cast<std::size_t>(g)] = 1.0;
            const double residual = contraction_term(sigma, lambda, u, reading) - (m + 1 - u.weight()) * sigma(flat(g, u));
            r.minimality_residual = std::max(r.minimality_residual, std::abs(residual));
        }
    }
    r.minimal = r.minimality_residual <= tolerance;
    return r;
}

}  // namespace gnt
