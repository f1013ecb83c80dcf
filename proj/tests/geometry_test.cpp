#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gnt/catalog.hpp"
#include "gnt/errors.hpp"
#include "gnt/geometry.hpp"
#include "gnt/grid.hpp"
#include "gnt/jet.hpp"

using gnt::Jet;
using gnt::MultiIndex;

namespace {

constexpr double pi = std::numbers::pi;

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

gnt::Discretization discretize(const gnt::Immersion& imm, std::vector<int> counts) {
    return gnt::discretize(imm, gnt::make_grid(imm, counts));
}

}  // namespace

TEST(Jet, ProductsAndCompositionMatchHandDerivatives) {
    const double x0 = 0.7, y0 = -0.4;
    const Jet x = Jet::variable(2, 0, x0), y = Jet::variable(2, 1, y0);
    const Jet f = sin(x) * cos(y);
    EXPECT_NEAR(f.value(), std::sin(x0) * std::cos(y0), 1e-15);
    EXPECT_NEAR(f.d(0), std::cos(x0) * std::cos(y0), 1e-15);
    EXPECT_NEAR(f.d(1), -std::sin(x0) * std::sin(y0), 1e-15);
    EXPECT_NEAR(f.d(0, 1), -std::cos(x0) * std::sin(y0), 1e-15);
    EXPECT_NEAR(f.d(1, 1), -std::sin(x0) * std::cos(y0), 1e-15);
    const int e30[] = {3, 0};
    EXPECT_NEAR(f.derivative(e30), -std::cos(x0) * std::cos(y0), 1e-14);

    // sqrt(1 + x^2 y), with derivatives taken by hand
    const Jet g = sqrt(1.0 + x * x * y);
    const double s = 1 + x0 * x0 * y0, r = std::sqrt(s);
    EXPECT_NEAR(g.value(), r, 1e-15);
    EXPECT_NEAR(g.d(0), x0 * y0 / r, 1e-15);
    EXPECT_NEAR(g.d(1), x0 * x0 / (2 * r), 1e-15);
    EXPECT_NEAR(g.d(0, 1), x0 / r - x0 * y0 * x0 * x0 / (2 * r * s), 1e-14);

    const Jet h = inverse(2.0 + x);
    const int e3[] = {3, 0};
    EXPECT_NEAR(h.derivative(e3), -6 / std::pow(2 + x0, 4), 1e-14);
    EXPECT_NEAR((x / x).value(), 1.0, 1e-15);
    EXPECT_NEAR((x / x).d(0), 0.0, 1e-15);
}

TEST(Jet, DifferentiationLowersOrder) {
    const Jet x = Jet::variable(3, 2, 0.3);
    const Jet f = x * x * x;
    const Jet df = f.diff(2);
    EXPECT_EQ(df.order(), 2);
    EXPECT_NEAR(df.value(), 3 * 0.09, 1e-15);
    EXPECT_NEAR(df.d(2, 2), 6.0, 1e-14);
    EXPECT_THROW(df.diff(2).diff(2).diff(2), gnt::PreconditionError);
    const int e[] = {0, 0, 3};
    EXPECT_THROW(df.derivative(e), gnt::PreconditionError);
    EXPECT_THROW(Jet::variable(2, 0, 0.0) + Jet::variable(3, 0, 0.0), gnt::PreconditionError);
}

TEST(Grid, GaussLegendreIntegratesPolynomialsExactly) {
    std::vector<double> x, w;
    gnt::gauss_legendre(2, x, w);
    EXPECT_NEAR(x[1], 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(w[0], 1.0, 1e-15);
    for (int n = 1; n <= 20; ++n) {
        gnt::gauss_legendre(n, x, w);
        for (int p = 0; p < 2 * n; ++p) {
            double s = 0;
            for (int k = 0; k < n; ++k) s += w[static_cast<std::size_t>(k)] * std::pow(x[static_cast<std::size_t>(k)], p);
            EXPECT_NEAR(s, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-13) << "n=" << n << " p=" << p;
        }
        for (int k = 1; k < n; ++k) EXPECT_LT(x[static_cast<std::size_t>(k - 1)], x[static_cast<std::size_t>(k)]);
    }
}

TEST(Grid, TensorWeightsAndOrdering) {
    const gnt::ParamGrid grid({gnt::Axis::make(gnt::AxisRule::gauss_legendre, 5, 0, pi),
                               gnt::Axis::make(gnt::AxisRule::periodic, 8, 0, 2 * pi)});
    double total = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_GT(grid.weight(k), 0.0);
        total += grid.weight(k);
    }
    EXPECT_NEAR(total, 2 * pi * pi, 1e-12);
    EXPECT_NEAR(grid.node(1)[1], 2 * pi / 8, 1e-15);  // last axis fastest
    EXPECT_EQ(grid.node(1)[0], grid.node(0)[0]);
    EXPECT_THROW(gnt::Axis::make(gnt::AxisRule::periodic, 0, 0, 1), gnt::PreconditionError);
    EXPECT_THROW(gnt::parse_axis_rule("trapezoid"), gnt::ParseError);
}

TEST(Catalog, RoundSphereShapeAndMetric) {
    const double R = 1.3;
    const auto d = discretize(*gnt::round_sphere(2, R), {6, 8});
    for (std::size_t k = 0; k < d.geom.size(); ++k) {
        const auto& geo = d.geom[k];
        const double theta = d.sample.nodes[k].x[0];
        EXPECT_NEAR(geo.g(0, 0), R * R, 1e-13);
        EXPECT_NEAR(geo.g(1, 1), R * R * std::sin(theta) * std::sin(theta), 1e-13);
        EXPECT_NEAR(geo.g(0, 1), 0.0, 1e-13);
        EXPECT_LT((geo.shape[0] + gnt::Matrix::Identity(2, 2) / R).cwiseAbs().maxCoeff(), 1e-13);
    }
    const auto v = gnt::validate(d.sample, d.geom);
    EXPECT_LT(v.frame_orthonormality, 1e-10);
    EXPECT_LT(v.frame_tangency, 1e-10);
    EXPECT_LT(v.self_adjointness, 1e-9);
    EXPECT_EQ(gnt::flatness_residual(d.geom), 0.0);

    const auto circle = discretize(*gnt::round_sphere(1, 1.0), {16});
    for (const auto& geo : circle.geom) EXPECT_NEAR(geo.g(0, 0), 1.0, 1e-15);
}

TEST(Catalog, FlatTorusTupleAndParallelFrame) {
    const double r1 = 1.5, r2 = 0.7;
    const auto d = discretize(*gnt::flat_torus({r1, r2}), {8, 8});
    for (const auto& geo : d.geom) {
        EXPECT_NEAR(geo.g(0, 0), r1 * r1, 1e-14);
        EXPECT_NEAR(geo.g(1, 1), r2 * r2, 1e-14);
        EXPECT_NEAR(geo.shape[0](0, 0), 1 / r1, 1e-14);
        EXPECT_NEAR(geo.shape[1](1, 1), 1 / r2, 1e-14);
        EXPECT_NEAR(geo.shape[0](1, 1), 0.0, 1e-14);
        EXPECT_NEAR(geo.shape[1](0, 0), 0.0, 1e-14);
        for (const auto& c : geo.connection) EXPECT_EQ(c.cwiseAbs().maxCoeff(), 0.0);
    }
    EXPECT_LE(gnt::flatness_residual(d.geom), 1e-10);
    const auto v = gnt::validate(d.sample, d.geom);
    EXPECT_LT(v.frame_orthonormality, 1e-10);
    EXPECT_LT(v.frame_tangency, 1e-10);
    EXPECT_EQ(v.connection_antisymmetry, 0.0);
}

TEST(Catalog, CliffordAndSphericalCases) {
    const double a = pi / 3;
    const auto d = discretize(*gnt::clifford_torus(a), {6, 6});
    for (const auto& s : d.sigma) EXPECT_NEAR(s(mi({1})), 1 / std::tan(a) - std::tan(a), 1e-13);
    const auto v = gnt::validate(d.sample, d.geom);
    EXPECT_LT(v.sphere_constraint, 1e-12);
    EXPECT_LT(v.frame_tangency, 1e-10);

    const double r = 0.6, cot = std::sqrt(1 - r * r) / r;
    const auto small = discretize(*gnt::small_sphere_in_sphere(2, r), {5, 6});
    for (const auto& geo : small.geom)
        EXPECT_LT((geo.shape[0] + cot * gnt::Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT(gnt::validate(small.sample, small.geom).sphere_constraint, 1e-12);

    const auto equator = discretize(*gnt::small_sphere_in_sphere(2, 1.0), {5, 6});
    for (const auto& geo : equator.geom) EXPECT_LT(geo.shape[0].cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Catalog, RejectsBadParameters) {
    EXPECT_THROW(gnt::round_sphere(4, 1.0), gnt::LimitError);
    EXPECT_THROW(gnt::round_sphere(2, -1.0), gnt::PreconditionError);
    EXPECT_THROW(gnt::clifford_torus(2.0), gnt::PreconditionError);
    EXPECT_THROW(gnt::small_sphere_in_sphere(2, 1.5), gnt::PreconditionError);
    EXPECT_THROW(gnt::bumpy_sphere(1.0, 2, 0.7), gnt::PreconditionError);
    const auto torus = gnt::flat_torus({1.0, 2.0});
    EXPECT_THROW(discretize(*torus, {8}), gnt::PreconditionError);
    const gnt::ParamGrid wrong({gnt::Axis::make(gnt::AxisRule::gauss_legendre, 4, 0, pi),
                                gnt::Axis::make(gnt::AxisRule::periodic, 4, 0, 2 * pi)});
    EXPECT_THROW(gnt::discretize(*torus, wrong), gnt::PreconditionError);
}

TEST(Functional, ClosedForms) {
    const double r1 = 1.5, r2 = 0.7;
    const auto torus = discretize(*gnt::flat_torus({r1, r2}), {64, 64});
    EXPECT_NEAR(gnt::functional(torus, mi({1, 1})), 4 * pi * pi, 1e-10);
    EXPECT_NEAR(gnt::functional(torus, mi({1, 0})), 4 * pi * pi * r2, 1e-10);
    EXPECT_NEAR(gnt::functional(torus, mi({0, 0})), 4 * pi * pi * r1 * r2, 1e-10);

    const double R = 1.3;
    const auto sphere = discretize(*gnt::round_sphere(2, R), {32, 64});
    EXPECT_NEAR(gnt::functional(sphere, mi({1})), -8 * pi * R, 1e-8);
    EXPECT_NEAR(gnt::functional(sphere, mi({2})), 4 * pi, 1e-8);
    EXPECT_NEAR(gnt::functional(sphere, mi({0})), 4 * pi * R * R, 1e-8);

    // volume of the unit 3-sphere is 2 pi^2
    const auto s3 = discretize(*gnt::round_sphere(3, 1.0), {16, 16, 16});
    EXPECT_NEAR(gnt::functional(s3, mi({0})), 2 * pi * pi, 1e-10);
}

TEST(Functional, GaussBonnetOnBumpySphere) {
    const auto bumpy = discretize(*gnt::bumpy_sphere(1.0, 2, 0.1), {64, 64});
    EXPECT_NEAR(gnt::functional(bumpy, mi({2})), 4 * pi, 1e-6);
    EXPECT_LT(gnt::validate(bumpy.sample, bumpy.geom).self_adjointness, 1e-9);
    const auto flat = discretize(*gnt::bumpy_sphere(1.0, 3, 0.0), {8, 8});
    for (const auto& s : flat.sigma) EXPECT_NEAR(s(mi({1})), -2.0, 1e-13);
}
