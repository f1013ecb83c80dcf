#include "gnt/identities.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "gnt/config.hpp"
#include "gnt/errors.hpp"
#include "gnt/random.hpp"

namespace gnt {

namespace {

struct Identity {
    const char* id;
    const char* anchor;
};

constexpr Identity kSigmaInterpolation{"sigma_interpolation",
                                       "coefficients of det(I + sum_a t_a A_a): elimination = interpolation"};
constexpr Identity kExplicitSum{"explicit_sum",
                                "T_u = sum_s sum_{i in I(q,s)} (-1)^s sigma_{u-|i|} A^i equals the recurrence"};
constexpr Identity kVanishing{"newton_vanishing", "T_u = 0 for |u| >= m"};
constexpr Identity kTraceSigma{"trace_sigma", "|u| sigma_u = sum_a tr(A_a T_{a_flat(u)})"};
constexpr Identity kTraceNewton{"trace_newton", "tr(T_u) = (m - |u|) sigma_u"};
constexpr Identity kRightRecurrence{"right_recurrence", "T_u = sigma_u I - sum_a T_{a_flat(u)} A_a"};
constexpr Identity kUnitRecurrence{"sigma_recurrence",
                              "sum_{a,b} tr(A_a A_b T_{b_flat a_flat(u)}) = -|u| sigma_u + sum_b tr(A_b) sigma_{b_flat(u)}"};
constexpr Identity kWeightedRecurrence{
    "weighted_recurrence",
    "sum_{a,b} lambda_b tr(A_a A_b T_{b_flat a_flat(u)}) = -<lambda,u> sigma_u + sum_b lambda_b tr(A_b) sigma_{b_flat(u)}"};
constexpr Identity kWeightedTrace{"weighted_trace", "sum_b lambda_b tr(A_b T_{b_flat(u)}) = <lambda,u> sigma_u"};
constexpr Identity kVariationComponentwise{
    "variation_componentwise",
    "sum_{a,b} lambda_b tr(A_a A_b T_{a_flat(u)}) = -sum_b lambda_b (u_b+1) sigma_{b_sharp(u)} + sum_b lambda_b tr(A_b) sigma_u"};
constexpr Identity kVariationLiteral{
    "variation_literal",
    "sum_{a,b} lambda_b tr(A_a A_b T_{a_flat(u)}) = -sum_b <lambda,b_sharp(u)> sigma_{b_sharp(u)} + sum_b lambda_b tr(A_b) sigma_u"};
constexpr Identity kChainRule{"chain_rule", "d sigma_u(A + tB)/dt at 0 = sum_a tr(B_a T_{a_flat(u)})"};
constexpr Identity kConjugation{"conjugation", "sigma_u(Q A Q^-1) = sigma_u(A)"};

struct Worst {
    double residual = 0;
    double lhs = 0;
    double rhs = 0;
    bool seen = false;

    void update(double r, double l, double h) {
        // NaN residuals must win so they cannot hide behind finite ones.
        if (!seen || std::isnan(r) || r > residual) {
            residual = r;
            lhs = l;
            rhs = h;
            seen = true;
        }
    }
    void update(const Comparison& c) { update(c.residual(), c.lhs, c.rhs); }
};

// ||x - y|| relative to both sides and the magnitude of what was summed.
void update_matrix(Worst& w, const Matrix& x, const Matrix& y, double magnitude) {
    const double scale = std::max({x.norm(), y.norm(), magnitude});
    w.update((x - y).norm() / (scale + 1e-300), x.norm(), y.norm());
}

struct GroupResult {
    int q = 0;
    int m = 0;
    std::vector<Worst> worst;
};

enum Slot {
    sigma_interpolation,
    explicit_sum,
    vanishing,
    trace_sigma,
    trace_newton,
    right_recurrence,
    unit_recurrence,
    weighted_recurrence,
    weighted_trace,
    variation_componentwise,
    variation_literal,
    chain_rule,
    conjugation,
    slot_count
};

GroupResult run_group(const IdentitiesConfig& config, int q, int m) {
    GroupResult g{q, m, std::vector<Worst>(slot_count)};
    for (int trial = 0; trial < config.trials; ++trial) {
        auto rng = Rng::stream(config.seed, {static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(m),
                                             static_cast<std::uint64_t>(trial)});
        const auto ensemble = trial % 2 == 0 ? Ensemble::general : Ensemble::symmetric;
        const EndoTuple a = random_tuple(rng, q, m, ensemble);
        std::vector<double> lambda;
        for (int k = 0; k < q; ++k) lambda.push_back(rng.uniform(-1.0, 1.0));
        const std::vector<double> ones(static_cast<std::size_t>(q), 1.0);

        const SigmaTable sigma = sigma_by_determinant(a);
        const NewtonTable t = gnt_by_recurrence(a, sigma);

        const auto interp = sigma_by_interpolation(a);
        double sigma_scale = 0;
        for (double v : sigma.values()) sigma_scale = std::max(sigma_scale, std::abs(v));
        for (std::size_t k = 0; k < sigma.values().size(); ++k) {
            const double x = sigma.values()[k], y = interp.table.values()[k];
            g.worst[sigma_interpolation].update(std::abs(x - y) / (sigma_scale + 1e-300), x, y);
        }

        const NewtonTable words = gnt_table_by_explicit_sum(a, sigma);
        const Matrix id = Matrix::Identity(m, m);
        for (std::size_t k = 0; k < sigma.basis().size(); ++k) {
            const MultiIndex& u = sigma.basis()[k];
            const Matrix tu = t(u);
            double magnitude = std::abs(sigma(u)) * std::sqrt(static_cast<double>(m));
            Matrix right = sigma(u) * id;
            for (int alpha = 0; alpha < q; ++alpha) {
                const Matrix lower = t(flat(alpha, u));
                magnitude += a[alpha].norm() * lower.norm();
                right -= lower * a[alpha];
            }
            update_matrix(g.worst[explicit_sum], words.values()[k], tu, magnitude);
            if (u.weight() >= 1) update_matrix(g.worst[right_recurrence], right, tu, magnitude);
            if (u.weight() >= m) update_matrix(g.worst[vanishing], tu, Matrix::Zero(m, m), magnitude);

            g.worst[unit_recurrence].update(weighted_recurrence_check(a, sigma, t, ones, u));
            g.worst[weighted_recurrence].update(weighted_recurrence_check(a, sigma, t, lambda, u));
            g.worst[weighted_trace].update(weighted_trace_check(a, sigma, t, lambda, u));
            g.worst[variation_componentwise].update(
                variation_algebra_check(a, sigma, t, lambda, u, Reading::componentwise));
            g.worst[variation_literal].update(variation_algebra_check(a, sigma, t, lambda, u, Reading::literal));
        }
        for (const auto& ti : trace_identity_check(a, sigma, t)) {
            g.worst[trace_sigma].update(ti.weighted_sigma);
            g.worst[trace_newton].update(ti.trace);
        }

        const EndoTuple direction = random_tuple(rng, q, m, ensemble);
        const auto curve = [&](double s) { return a.plus(s, direction); };
        for (const auto& r : gnt_chain_rule_check(curve, direction)) g.worst[chain_rule].update(r.comparison);

        const Matrix qm = random_invertible(rng, m);
        const SigmaTable conj = sigma_by_determinant(a.conjugated(qm));
        for (std::size_t k = 0; k < sigma.values().size(); ++k) {
            const double x = conj.values()[k], y = sigma.values()[k];
            g.worst[conjugation].update(std::abs(x - y) / (sigma_scale + 1e-300), x, y);
        }
    }
    return g;
}

const Identity& identity_of(int slot) {
    static const Identity all[] = {kSigmaInterpolation, kExplicitSum,    kVanishing,      kTraceSigma,
                                   kTraceNewton,        kRightRecurrence, kUnitRecurrence,      kWeightedRecurrence,
                                   kWeightedTrace,      kVariationComponentwise, kVariationLiteral, kChainRule,
                                   kConjugation};
    return all[slot];
}

}  // namespace

SuiteReport run_identities(const IdentitiesConfig& config) {
    if (config.trials < 1 || config.trials > 100000) throw LimitError("trials must lie in 1..100000");
    if (config.q_values.empty() || config.m_values.empty()) throw ParseError("q and m lists must not be empty");
    for (int q : config.q_values)
        if (q < 1 || q > kMaxCodim) throw LimitError("q must lie in 1..4");
    for (int m : config.m_values)
        if (m < 1 || m > kMaxDim) throw LimitError("m must lie in 1..8");

    std::vector<std::future<GroupResult>> jobs;
    for (int q : config.q_values)
        for (int m : config.m_values) jobs.push_back(std::async(std::launch::async, run_group, config, q, m));

    SuiteReport report("identities");
    Json groups = Json::array();
    for (auto& job : jobs) {
        const GroupResult g = job.get();
        Json worst = Json::object();
        for (int slot = 0; slot < slot_count; ++slot) {
            const Worst& w = g.worst[static_cast<std::size_t>(slot)];
            if (!w.seen) continue;
            const Identity& id = identity_of(slot);
            bool informational = false;
            if (slot == variation_componentwise) informational = config.reading == ReadingChoice::literal;
            if (slot == variation_literal) informational = config.reading != ReadingChoice::literal;
            const double tol = slot == chain_rule ? config.chain_rule_tolerance : config.tolerance;
            report.add(CheckRecord::make(std::string(id.id) + " q=" + std::to_string(g.q) + " m=" + std::to_string(g.m),
                                         id.anchor, w.lhs, w.rhs, w.residual, tol, informational));
            worst[id.id] = std::isfinite(w.residual) ? Json(w.residual) : Json(format_number(w.residual));
        }
        groups.push_back({{"q", g.q}, {"m", g.m}, {"trials", config.trials}, {"worst_residual", std::move(worst)}});
    }
    report.results()["groups"] = std::move(groups);
    return report;
}

}  // namespace gnt
