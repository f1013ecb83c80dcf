#include "gnt/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "gnt/catalog.hpp"
#include "gnt/config.hpp"
#include "gnt/identities.hpp"
#include "gnt/variation.hpp"

namespace gnt {

namespace {

constexpr double pi = std::numbers::pi;

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CriterionResult timed(int id, std::string title, double budget, const std::function<void(CriterionResult&)>& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.budget_seconds = budget;
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.seconds = seconds_since(start);
    return r;
}

bool starts_with(const std::string& s, std::string_view prefix) { return s.rfind(prefix, 0) == 0; }

ParamGrid grid_of(const Immersion& imm, std::vector<int> counts) { return make_grid(imm, counts); }

// Relative closeness to a closed-form value.
CheckRecord closed_form(std::string name, std::string anchor, double value, double expected, double tol) {
    const double residual = std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
    return CheckRecord::make(std::move(name), std::move(anchor), value, expected, residual, tol);
}

VariationField cos_modulated(const std::vector<double>& lambda, int m) {
    VariationField f = VariationField::constant(lambda, std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (std::size_t a = 0; a < lambda.size(); ++a) {
        std::vector<int> k(static_cast<std::size_t>(m), 0);
        k[a % static_cast<std::size_t>(m)] = 1;
        f.normal[a].terms.push_back({0.3 * lambda[a], k, false});
    }
    return f;
}

void criterion_identities(CriterionResult& r, const SuiteReport& suite, std::initializer_list<std::string_view> ids) {
    for (const auto& rec : suite.records())
        for (auto id : ids)
            if (starts_with(rec.name, std::string(id) + " ")) r.checks.push_back(rec);
}

void criterion3(CriterionResult& r, std::uint64_t seed) {
    struct Case {
        double r1, r2;
        std::vector<double> lambda;
    };
    std::vector<Case> cases{{1.0, 1.0, {1.0, 1.0}}, {1.5, 0.7, {0.4, -1.1}}};
    auto rng = Rng::stream(seed, {3});
    for (int k = 0; k < 3; ++k)
        cases.push_back({rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0), {rng.uniform(-2, 2), rng.uniform(-2, 2)}});
    Json details = Json::array();
    for (const auto& c : cases) {
        Matrix a1 = Matrix::Zero(2, 2), a2 = Matrix::Zero(2, 2);
        a1(0, 0) = 1 / c.r1;
        a2(1, 1) = 1 / c.r2;
        const EndoTuple a({a1, a2});
        const auto u = mi({1, 0});
        const auto comp = variation_algebra_check(a, c.lambda, u, Reading::componentwise);
        const auto lit = variation_algebra_check(a, c.lambda, u, Reading::literal);
        const double expected = std::abs(c.lambda[0]) / (c.r1 * c.r2);
        const std::string tag = "r=(" + format_number(c.r1) + "," + format_number(c.r2) + ") lambda=(" +
                                format_number(c.lambda[0]) + "," + format_number(c.lambda[1]) + ")";
        r.checks.push_back(CheckRecord::make("componentwise exact, " + tag,
                                             "flat torus tuple, u=(1,0): componentwise reading gives lhs = rhs",
                                             comp.lhs, comp.rhs, std::abs(comp.lhs - comp.rhs), 1e-12));
        const double gap = std::abs(lit.lhs - lit.rhs);
        r.checks.push_back(CheckRecord::make("literal gap, " + tag,
                                             "flat torus tuple, u=(1,0): literal reading misses by |lambda_1|/(r_1 r_2)",
                                             gap, expected, std::abs(gap - expected), 1e-12));
        details.push_back({{"radii", {c.r1, c.r2}},
                           {"lambda", c.lambda},
                           {"componentwise_residual", std::abs(comp.lhs - comp.rhs)},
                           {"literal_residual", gap},
                           {"expected_literal_residual", expected}});
    }
    r.details["cases"] = std::move(details);
}

void criterion4(CriterionResult& r) {
    Json details = Json::object();
    auto run = [&](const std::string& key, const std::function<void()>& f) {
        const auto start = std::chrono::steady_clock::now();
        f();
        details[key] = seconds_since(start);
    };
    run("flat_torus_seconds", [&] {
        const auto torus = flat_torus({1.5, 0.7});
        const auto d = discretize(*torus, grid_of(*torus, {64, 64}));
        r.checks.push_back(closed_form("flat torus integral of sigma_(1,1)", "integral of sigma_(1,1) dV = 4 pi^2",
                                       functional(d, mi({1, 1})), 4 * pi * pi, 1e-10));
    });
    run("round_sphere_seconds", [&] {
        const double R = 1.3;
        const auto sphere = round_sphere(2, R);
        const auto d = discretize(*sphere, grid_of(*sphere, {32, 64}));
        r.checks.push_back(closed_form("round sphere R=1.3 integral of sigma_1", "integral of sigma_1 dV = -8 pi R",
                                       functional(d, mi({1})), -8 * pi * R, 1e-8));
        r.checks.push_back(closed_form("round sphere R=1.3 integral of sigma_2", "integral of sigma_2 dV = 4 pi",
                                       functional(d, mi({2})), 4 * pi, 1e-8));
    });
    run("bumpy_sphere_seconds", [&] {
        for (int k : {2, 3}) {
            const auto bumpy = bumpy_sphere(1.0, k, 0.1);
            const auto d = discretize(*bumpy, grid_of(*bumpy, {64, 64}));
            r.checks.push_back(closed_form("bumpy sphere harmonic " + std::to_string(k) + " integral of sigma_2",
                                           "integral of sigma_2 dV = 4 pi for any embedded sphere",
                                           functional(d, mi({2})), 4 * pi, 1e-6));
        }
    });
    r.details = std::move(details);
}

void criterion5(CriterionResult& r, std::uint64_t seed) {
    Json details = Json::array();
    auto compare = [&](const std::string& name, const Immersion& imm, const ParamGrid& grid, const Discretization& d,
                       const VariationField& field, const MultiIndex& u, double c) {
        const double analytic = analytic_first_variation(d, field, u, c, Reading::componentwise);
        const auto fd = fd_first_variation(imm, grid, field, u);
        r.checks.push_back(agreement_record(name, "first variation of integral sigma_u dV: formula = finite difference",
                                            analytic, fd.value));
        details.push_back({{"case", name}, {"analytic", analytic}, {"fd", fd.value}, {"fd_error", fd.error}});
        return analytic;
    };

    const double R = 1.3;
    const auto sphere = round_sphere(2, R);
    const auto sg = grid_of(*sphere, {24, 32});
    const auto sd = discretize(*sphere, sg);
    const double sa =
        compare("round sphere R=1.3 u=(1) lambda=1", *sphere, sg, sd, VariationField::constant({1.0}, {0, 0}), mi({1}), 0);
    r.checks.push_back(closed_form("round sphere variation closed form", "first variation of integral sigma_1 = -8 pi",
                                   sa, -8 * pi, 1e-8));

    const auto torus = flat_torus({1.5, 0.7});
    const auto tg = grid_of(*torus, {32, 32});
    const auto td = discretize(*torus, tg);
    const std::vector<double> lambda{0.4, -1.1};
    for (bool modulated : {false, true}) {
        const auto field = modulated ? cos_modulated(lambda, 2) : VariationField::constant(lambda, {0, 0});
        for (const auto& u : {mi({1, 0}), mi({0, 1}), mi({1, 1})})
            compare(std::string("flat torus ") + (modulated ? "cos-modulated" : "constant") + " lambda u=" + u.to_string(),
                    *torus, tg, td, field, u, 0);
    }

    const auto clifford = clifford_torus(pi / 3);
    const auto cg = grid_of(*clifford, {32, 32});
    const auto cd = discretize(*clifford, cg);
    auto rng = Rng::stream(seed, {5});
    const auto field = random_field(rng, 1, 2, 2, 0.5, 0.0);
    const double ca = compare("clifford_s3(pi/3) u=(0) random lambda", *clifford, cg, cd, field, mi({0}), 1);
    std::vector<double> integrand;
    for (std::size_t k = 0; k < cd.sample.nodes.size(); ++k)
        integrand.push_back(-cd.sigma[k](mi({1})) * field.normal[0].value(cd.sample.nodes[k].x));
    const double expected = integrate(cd.sample, cd.geom, integrand);
    r.checks.push_back(CheckRecord::make("clifford_s3(pi/3) variation equals -integral sigma_1 lambda",
                                         "u = 0 in S^3: first variation = -integral of sigma_1 lambda dV", ca, expected,
                                         std::abs(ca - expected) / std::max(std::abs(expected), 1e-300), 1e-12));
    r.details["cases"] = std::move(details);
}

std::vector<std::shared_ptr<const Immersion>> catalog_cases() {
    return {round_sphere(2, 0.9),           round_sphere(3, 1.3),        flat_torus({1.5, 0.7}),
            flat_torus({1.2, 0.9, 0.6}),    clifford_torus(0.6),          clifford_torus(pi / 4),
            bumpy_sphere(1.0, 2, 0.1),      bumpy_sphere(1.2, 3, 0.2),    small_sphere_in_sphere(2, 0.6),
            small_sphere_in_sphere(3, 0.8)};
}

void criterion6(CriterionResult& r, std::uint64_t seed) {
    Json details = Json::array();
    int index = 0;
    for (const auto& imm : catalog_cases()) {
        const auto grid = grid_of(*imm, std::vector<int>(static_cast<std::size_t>(imm->m()), imm->m() == 3 ? 6 : 8));
        auto rng = Rng::stream(seed, {6, static_cast<std::uint64_t>(index++)});
        const auto field = random_field(rng, imm->q(), imm->m(), 2, 0.3, 0.3);
        const auto metric = metric_variation_check(*imm, grid, field);
        const auto volume = volume_variation_check(*imm, grid, field);
        r.checks.push_back(CheckRecord::make(imm->name() + " metric variation",
                                             "d g^{jk}/dt = -g^{jl} g^{pk} (mu_{p,l} + mu_{l,p} - 2 lambda_b (A_b)_{pl})",
                                             metric.max_abs_difference, 0, metric.residual, 1e-7));
        r.checks.push_back(CheckRecord::make(imm->name() + " volume variation",
                                             "d sqrt(det g)/dt = (-lambda_a tr A_a + div mu) sqrt(det g)",
                                             volume.max_abs_difference, 0, volume.residual, 1e-7));
        details.push_back({{"immersion", imm->name()}, {"metric_residual", metric.residual},
                           {"volume_residual", volume.residual}});
    }
    r.details["cases"] = std::move(details);
}

void criterion7(CriterionResult& r, const SuiteReport& suite, std::uint64_t seed) {
    criterion_identities(r, suite, {"conjugation"});
    for (auto& rec : r.checks) rec.tolerance = 1e-8, rec.pass = rec.residual <= 1e-8;

    struct Case {
        std::shared_ptr<const Immersion> imm;
        std::vector<int> counts;
        MultiIndex u;
    };
    const std::vector<Case> cases{{round_sphere(2, 1.3), {16, 24}, mi({1})},
                                  {flat_torus({1.5, 0.7}), {24, 24}, mi({1, 0})},
                                  {clifford_torus(pi / 3), {24, 24}, mi({0})},
                                  {bumpy_sphere(1.0, 2, 0.1), {24, 32}, mi({1})}};
    int index = 0;
    for (const auto& c : cases) {
        const auto grid = grid_of(*c.imm, c.counts);
        auto rng = Rng::stream(seed, {7, static_cast<std::uint64_t>(index++)});
        const auto tangential = random_field(rng, c.imm->q(), c.imm->m(), 2, 0.0, 0.4);
        const double dt = fd_first_variation(*c.imm, grid, tangential, c.u).value;
        r.checks.push_back(CheckRecord::make(c.imm->name() + " tangential-only variation",
                                             "tangential variations leave integral sigma_u dV unchanged", dt, 0,
                                             std::abs(dt), 1e-8));

        const auto x1 = random_field(rng, c.imm->q(), c.imm->m(), 2, 0.4, 0.2);
        const auto x2 = random_field(rng, c.imm->q(), c.imm->m(), 2, 0.4, 0.2);
        const double f1 = fd_first_variation(*c.imm, grid, x1, c.u).value;
        const double f2 = fd_first_variation(*c.imm, grid, x2, c.u).value;
        const double f12 = fd_first_variation(*c.imm, grid, x1.plus(x2), c.u).value;
        const double f1x2 = fd_first_variation(*c.imm, grid, x1.scaled(2.0), c.u).value;
        const double scale = std::max({1.0, std::abs(f1) + std::abs(f2)});
        r.checks.push_back(CheckRecord::make(c.imm->name() + " additivity", "dF(X1 + X2) = dF(X1) + dF(X2)", f12,
                                             f1 + f2, std::abs(f12 - f1 - f2) / scale, 1e-8));
        r.checks.push_back(CheckRecord::make(c.imm->name() + " homogeneity", "dF(2 X) = 2 dF(X)", f1x2, 2 * f1,
                                             std::abs(f1x2 - 2 * f1) / std::max(1.0, 2 * std::abs(f1)), 1e-8));
    }
}

void criterion8(CriterionResult& r) {
    const auto clifford = clifford_torus(pi / 4);
    const auto cd = discretize(*clifford, grid_of(*clifford, {32, 32}));
    const auto rep = sphere_minimality(cd, mi({0}), Reading::componentwise);
    r.checks.push_back(CheckRecord::make("clifford_s3(pi/4) sigma_0-minimal",
                                         "minimal in S^3: contraction(e_g) = (m + 1 - |u|) sigma_{g_flat(u)}",
                                         rep.minimality_residual, 0, rep.minimality_residual, 1e-10));

    const double r1 = 1.5, r2 = 0.7;
    const auto torus = flat_torus({r1, r2});
    const auto td = discretize(*torus, grid_of(*torus, {16, 16}));
    const auto tr = euclidean_minimality(td, mi({1, 0}), Reading::componentwise);
    const double expected = 1 / (r1 * r2);
    r.checks.push_back(CheckRecord::make("flat torus not sigma_(1,0)-minimal",
                                         "sigma_(1,0)-minimal iff every sigma_v with |v| = 2 vanishes",
                                         tr.minimal ? 1.0 : 0.0, 0.0, tr.minimal ? 1.0 : 0.0, 0.0));
    r.checks.push_back(CheckRecord::make("flat torus max |sigma_(1,1)|", "max |sigma_(1,1)| = 1/(r_1 r_2)",
                                         tr.minimality_residual, expected,
                                         std::abs(tr.minimality_residual - expected), 1e-10));
    r.details = {{"clifford_residual", rep.minimality_residual},
                 {"torus_minimality_residual", tr.minimality_residual},
                 {"torus_minimal", tr.minimal}};
}

}  // namespace

bool CriterionResult::checks_passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.informational && !c.pass) return false;
    return true;
}

CheckRecord agreement_record(std::string name, std::string anchor, double analytic, double fd, double rel,
                             double abs) {
    const double tol = std::max(rel * std::max(std::abs(analytic), std::abs(fd)), abs);
    return CheckRecord::make(std::move(name), std::move(anchor), analytic, fd, std::abs(analytic - fd), tol);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config) {
    IdentitiesConfig ic;
    ic.seed = config.seed;
    ic.trials = config.trials;
    SuiteReport suite("identities");
    double suite_seconds = 0;

    std::vector<CriterionResult> out;
    out.push_back(timed(1, "algebra suite", 10.0, [&](CriterionResult& r) {
        const auto start = std::chrono::steady_clock::now();
        suite = run_identities(ic);
        suite_seconds = seconds_since(start);
        criterion_identities(r, suite,
                             {"newton_vanishing", "trace_sigma", "trace_newton", "explicit_sum", "right_recurrence",
                              "sigma_recurrence", "weighted_recurrence", "weighted_trace", "chain_rule"});
        r.details = suite.results();
    }));
    out.push_back(timed(2, "oracle equivalence", 0.0, [&](CriterionResult& r) {
        criterion_identities(r, suite, {"sigma_interpolation", "explicit_sum"});
        r.details = {{"shared_with_criterion", 1}};
    }));
    out.push_back(timed(3, "reading discrimination", 0.0, [&](CriterionResult& r) { criterion3(r, config.seed); }));
    out.push_back(timed(4, "functional closed forms", 5.0, criterion4));
    out.push_back(timed(5, "first-variation agreement", 30.0, [&](CriterionResult& r) { criterion5(r, config.seed); }));
    out.push_back(timed(6, "intermediate identities", 0.0, [&](CriterionResult& r) { criterion6(r, config.seed); }));
    out.push_back(timed(7, "invariance properties", 0.0,
                        [&](CriterionResult& r) { criterion7(r, suite, config.seed); }));
    out.push_back(timed(8, "minimality", 0.0, criterion8));
    return out;
}

}  // namespace gnt
