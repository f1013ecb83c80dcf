#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "gnt/catalog.hpp"
#include "gnt/errors.hpp"
#include "gnt/variation.hpp"

using gnt::MultiIndex;
using gnt::Reading;
using gnt::VariationField;

namespace {

constexpr double pi = std::numbers::pi;

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

gnt::ParamGrid grid_for(const gnt::Immersion& imm, std::vector<int> counts) { return gnt::make_grid(imm, counts); }

// Flat torus whose frame is rotated in the normal plane by an angle that
// depends on the first parameter: same submanifold, non-parallel frame.
class TwistedTorus final : public gnt::Immersion {
public:
    explicit TwistedTorus(double twist) : base_(gnt::flat_torus({1.2, 0.8})), twist_(twist) {}
    std::string name() const override { return "twisted_torus"; }
    int m() const override { return 2; }
    gnt::Ambient ambient() const override { return base_->ambient(); }
    std::vector<gnt::AxisDomain> domain() const override { return base_->domain(); }
    gnt::ImmersionJet evaluate(std::span<const double> x) const override {
        auto j = base_->evaluate(x);
        const gnt::Jet angle = twist_ * gnt::sin(gnt::Jet::variable(2, 0, x[0]));
        const gnt::Jet c = gnt::cos(angle), s = gnt::sin(angle);
        auto n0 = j.frame[0], n1 = j.frame[1];
        for (std::size_t k = 0; k < n0.size(); ++k) {
            j.frame[0][k] = c * n0[k] + s * n1[k];
            j.frame[1][k] = c * n1[k] - s * n0[k];
        }
        return j;
    }

private:
    std::shared_ptr<const gnt::Immersion> base_;
    double twist_;
};

VariationField cos_modulated(std::vector<double> lambda, int m) {
    VariationField f = VariationField::constant(lambda, std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (std::size_t a = 0; a < lambda.size(); ++a) {
        std::vector<int> k(static_cast<std::size_t>(m), 0);
        k[a % static_cast<std::size_t>(m)] = 1;
        f.normal[a].terms.push_back({0.3 * lambda[a], k, false});
    }
    return f;
}

}  // namespace

TEST(AnalyticVariation, SphereClosedForms) {
    // (r+1) C(m,r+1) (-1)^r R^{m-r-1} |S^m|
    const double R = 1.3;
    const auto s2 = gnt::round_sphere(2, R);
    const auto d2 = gnt::discretize(*s2, grid_for(*s2, {24, 32}));
    const auto one = VariationField::constant({1.0}, {0.0, 0.0});
    EXPECT_NEAR(gnt::analytic_first_variation(d2, one, mi({0}), 0, Reading::componentwise), 8 * pi * R, 1e-10);
    EXPECT_NEAR(gnt::analytic_first_variation(d2, one, mi({1}), 0, Reading::componentwise), -8 * pi, 1e-10);
    EXPECT_NEAR(gnt::analytic_first_variation(d2, one, mi({2}), 0, Reading::componentwise), 0.0, 1e-12);

    const auto s3 = gnt::round_sphere(3, R);
    const auto d3 = gnt::discretize(*s3, grid_for(*s3, {12, 12, 16}));
    const auto one3 = VariationField::constant({1.0}, {0.0, 0.0, 0.0});
    const double w3 = 2 * pi * pi;
    EXPECT_NEAR(gnt::analytic_first_variation(d3, one3, mi({0}), 0, Reading::literal), 3 * R * R * w3, 1e-9);
    EXPECT_NEAR(gnt::analytic_first_variation(d3, one3, mi({1}), 0, Reading::literal), -6 * R * w3, 1e-9);
    EXPECT_NEAR(gnt::analytic_first_variation(d3, one3, mi({2}), 0, Reading::literal), 3 * w3, 1e-9);
}

TEST(AnalyticVariation, FlatTorusAndTangentialFields) {
    const double r1 = 1.5, r2 = 0.7;
    const auto torus = gnt::flat_torus({r1, r2});
    const auto d = gnt::discretize(*torus, grid_for(*torus, {32, 32}));
    const auto field = VariationField::constant({0.4, -1.1}, {0.0, 0.0});
    EXPECT_NEAR(gnt::analytic_first_variation(d, field, mi({1, 0}), 0, Reading::componentwise), -4 * pi * pi * -1.1,
                1e-10);
    const auto tangential = VariationField::constant({0.0, 0.0}, {0.3, -0.2});
    EXPECT_EQ(gnt::analytic_first_variation(d, tangential, mi({1, 0}), 0, Reading::componentwise), 0.0);
}

TEST(AnalyticVariation, Preconditions) {
    const auto torus = gnt::flat_torus({1.5, 0.7});
    const auto d = gnt::discretize(*torus, grid_for(*torus, {8, 8}));
    const auto field = VariationField::constant({1.0, 0.0}, {0.0, 0.0});
    EXPECT_THROW(gnt::analytic_first_variation(d, field, mi({1, 0}), 1, Reading::componentwise),
                 gnt::PreconditionError);
    EXPECT_THROW(gnt::analytic_first_variation(d, VariationField::constant({1.0}, {0.0, 0.0}), mi({1, 0}), 0,
                                               Reading::componentwise),
                 gnt::PreconditionError);

    const TwistedTorus twisted(0.5);
    const auto dt = gnt::discretize(twisted, grid_for(twisted, {8, 8}));
    EXPECT_GT(gnt::flatness_residual(dt.geom), 1e-3);
    EXPECT_THROW(gnt::analytic_first_variation(dt, field, mi({1, 0}), 0, Reading::componentwise),
                 gnt::PreconditionError);
}

TEST(FdVariation, ClosedForms) {
    const auto torus = gnt::flat_torus({1.5, 0.7});
    const auto radial = VariationField::constant({0.4, -1.1}, {0.0, 0.0});
    const auto fd = gnt::fd_first_variation(*torus, grid_for(*torus, {32, 32}), radial, mi({1, 1}));
    EXPECT_NEAR(fd.value, 0.0, 1e-9);
    EXPECT_EQ(fd.central.size(), 3u);

    const double R = 1.3;
    const auto sphere = gnt::round_sphere(2, R);
    const auto fs = gnt::fd_first_variation(*sphere, grid_for(*sphere, {24, 32}), VariationField::constant({1.0}, {0, 0}),
                                            mi({1}));
    EXPECT_NEAR(fs.value, -8 * pi, 1e-6);
    EXPECT_LT(fs.error, 1e-6);

    auto rng = gnt::Rng::stream(5, {});
    const auto clifford = gnt::clifford_torus(pi / 4);
    const auto fc = gnt::fd_first_variation(*clifford, grid_for(*clifford, {32, 32}),
                                            gnt::random_field(rng, 1, 2, 2, 0.5, 0.0), mi({0}));
    EXPECT_NEAR(fc.value, 0.0, 1e-8);
}

TEST(FdVariation, AgreesWithAnalyticOnTorusReadings) {
    const double r1 = 1.5, r2 = 0.7;
    const auto torus = gnt::flat_torus({r1, r2});
    const auto grid = grid_for(*torus, {32, 32});
    const auto d = gnt::discretize(*torus, grid);
    for (const auto& field : {VariationField::constant({0.4, -1.1}, {0.0, 0.0}), cos_modulated({0.4, -1.1}, 2)}) {
        for (const auto& u : {mi({1, 0}), mi({0, 1}), mi({1, 1})}) {
            const double fd = gnt::fd_first_variation(*torus, grid, field, u).value;
            const double comp = gnt::analytic_first_variation(d, field, u, 0, Reading::componentwise);
            EXPECT_NEAR(fd, comp, std::max(1e-6 * std::abs(fd), 1e-8)) << u.to_string();
        }
    }
    // The literal reading adds lambda_1 sigma_(1,1) to the integrand: off by 4 pi^2 lambda_1.
    const auto field = VariationField::constant({0.4, -1.1}, {0.0, 0.0});
    const double fd = gnt::fd_first_variation(*torus, grid, field, mi({1, 0})).value;
    const double lit = gnt::analytic_first_variation(d, field, mi({1, 0}), 0, Reading::literal);
    EXPECT_NEAR(std::abs(fd - lit), 4 * pi * pi * 0.4, 1e-8);
}

TEST(FdVariation, CliffordInSphere) {
    const double a = pi / 3;
    const auto clifford = gnt::clifford_torus(a);
    const auto grid = grid_for(*clifford, {32, 32});
    const auto d = gnt::discretize(*clifford, grid);
    auto rng = gnt::Rng::stream(17, {});
    const auto field = gnt::random_field(rng, 1, 2, 2, 0.5, 0.0);
    const double fd = gnt::fd_first_variation(*clifford, grid, field, mi({0})).value;
    const double analytic = gnt::analytic_first_variation(d, field, mi({0}), 1, Reading::componentwise);
    EXPECT_NEAR(fd, analytic, std::max(1e-6 * std::abs(fd), 1e-8));

    // the same value as -integral of sigma_1 lambda
    std::vector<double> f;
    for (std::size_t k = 0; k < d.sample.nodes.size(); ++k)
        f.push_back(-d.sigma[k](mi({1})) * field.normal[0].value(d.sample.nodes[k].x));
    EXPECT_NEAR(analytic, gnt::integrate(d.sample, d.geom, f), 1e-12);

    // u = (1) picks up the curvature term c (m + 1 - |u|) lambda sigma_0
    const double fd1 = gnt::fd_first_variation(*clifford, grid, field, mi({1})).value;
    const double an1 = gnt::analytic_first_variation(d, field, mi({1}), 1, Reading::componentwise);
    EXPECT_NEAR(fd1, an1, std::max(1e-6 * std::abs(fd1), 1e-8));
}

TEST(FdVariation, SmallSphereInSphere) {
    for (double radius : {0.6, 1.0}) {
        const auto small = gnt::small_sphere_in_sphere(2, radius);
        const auto grid = grid_for(*small, {16, 24});
        const auto d = gnt::discretize(*small, grid);
        const auto one = VariationField::constant({1.0}, {0.0, 0.0});
        for (int r = 0; r <= 2; ++r) {
            const double fd = gnt::fd_first_variation(*small, grid, one, mi({r})).value;
            const double an = gnt::analytic_first_variation(d, one, mi({r}), 1, Reading::componentwise);
            EXPECT_NEAR(fd, an, std::max(1e-6 * std::abs(fd), 1e-8)) << radius << " " << r;
        }
    }
}

TEST(IntermediateIdentities, MetricAndVolume) {
    const double R = 1.3;
    const auto sphere = gnt::round_sphere(2, R);
    const auto sg = grid_for(*sphere, {8, 8});
    const auto one = VariationField::constant({1.0}, {0.0, 0.0});
    EXPECT_LE(gnt::metric_variation_check(*sphere, sg, one).residual, 1e-7);
    EXPECT_LE(gnt::volume_variation_check(*sphere, sg, one).residual, 1e-7);
    const auto none = gnt::metric_variation_check(*sphere, sg, VariationField::zero(1, 2));
    EXPECT_EQ(none.residual, 0.0);
    EXPECT_EQ(gnt::volume_variation_check(*sphere, sg, VariationField::zero(1, 2)).residual, 0.0);

    const auto torus = gnt::flat_torus({1.5, 0.7});
    const auto tg = grid_for(*torus, {8, 8});
    EXPECT_LE(gnt::metric_variation_check(*torus, tg, VariationField::constant({0, 0}, {0.3, -0.2})).residual, 1e-7);
    EXPECT_LE(gnt::volume_variation_check(*torus, tg, VariationField::constant({1, 0}, {0, 0})).residual, 1e-7);

    auto rng = gnt::Rng::stream(23, {});
    for (const auto& imm : {gnt::round_sphere(2, 0.9), gnt::flat_torus({1.5, 0.7}), gnt::clifford_torus(0.6),
                            gnt::bumpy_sphere(1.0, 2, 0.1), gnt::small_sphere_in_sphere(2, 0.6)}) {
        const auto grid = grid_for(*imm, std::vector<int>(static_cast<std::size_t>(imm->m()), 8));
        const auto field = gnt::random_field(rng, imm->q(), imm->m(), 2, 0.3, 0.3);
        EXPECT_LE(gnt::metric_variation_check(*imm, grid, field).residual, 1e-7) << imm->name();
        EXPECT_LE(gnt::volume_variation_check(*imm, grid, field).residual, 1e-7) << imm->name();
    }
}

TEST(Minimality, EuclideanCases) {
    const double r = 1.4;
    const auto torus = gnt::flat_torus({r, r});
    const auto d = gnt::discretize(*torus, grid_for(*torus, {8, 8}));
    const auto rep = gnt::euclidean_minimality(d, mi({1, 0}), Reading::componentwise);
    EXPECT_FALSE(rep.minimal);
    EXPECT_NEAR(rep.minimality_residual, 1 / (r * r), 1e-12);
    EXPECT_EQ(rep.checked.size(), 3u);
    EXPECT_LE(rep.identity_residual, 1e-10);

    const auto top = gnt::euclidean_minimality(d, mi({1, 1}), Reading::componentwise);
    EXPECT_TRUE(top.minimal);
    EXPECT_EQ(top.minimality_residual, 0.0);

    const auto sphere = gnt::round_sphere(2, 1.3);
    const auto ds = gnt::discretize(*sphere, grid_for(*sphere, {8, 8}));
    const auto s0 = gnt::euclidean_minimality(ds, mi({0}), Reading::componentwise);
    EXPECT_LE(s0.identity_residual, 1e-8);
    EXPECT_LE(s0.off_direction_residual, 1e-8);
    EXPECT_NEAR(s0.minimality_residual, 2 / 1.3, 1e-12);
    EXPECT_THROW(gnt::sphere_minimality(ds, mi({0}), Reading::componentwise), gnt::PreconditionError);
}

TEST(Minimality, SphericalCases) {
    const auto minimal = gnt::clifford_torus(pi / 4);
    const auto d = gnt::discretize(*minimal, grid_for(*minimal, {16, 16}));
    const auto rep = gnt::sphere_minimality(d, mi({0}), Reading::componentwise);
    EXPECT_LE(rep.minimality_residual, 1e-10);
    EXPECT_TRUE(rep.minimal);

    const auto other = gnt::clifford_torus(pi / 3);
    const auto d3 = gnt::discretize(*other, grid_for(*other, {16, 16}));
    EXPECT_NEAR(gnt::sphere_minimality(d3, mi({0}), Reading::componentwise).minimality_residual, 2 / std::sqrt(3.0),
                1e-12);

    const auto equator = gnt::small_sphere_in_sphere(2, 1.0);
    const auto de = gnt::discretize(*equator, grid_for(*equator, {8, 8}));
    // A = 0 kills every sigma except sigma_0, which enters through the
    // curvature term at u = (1): |0 - (2 + 1 - 1) sigma_0| = 2.
    EXPECT_LE(gnt::sphere_minimality(de, mi({0}), Reading::componentwise).minimality_residual, 1e-14);
    EXPECT_NEAR(gnt::sphere_minimality(de, mi({1}), Reading::componentwise).minimality_residual, 2.0, 1e-14);
    EXPECT_LE(gnt::sphere_minimality(de, mi({2}), Reading::componentwise).minimality_residual, 1e-14);
}
