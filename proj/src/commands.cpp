#include "gnt/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gnt/acceptance.hpp"
#include "gnt/config.hpp"
#include "gnt/errors.hpp"
#include "gnt/identities.hpp"

namespace gnt {

namespace {

const Json* find(const Json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::vector<int> int_list(const Json& j, const char* what) {
    if (j.is_number_integer()) return {j.get<int>()};
    if (!j.is_array() || j.empty()) throw ParseError(std::string(what) + " must be an integer or a non-empty array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

ReadingChoice reading_of(const Json& config) {
    const Json* r = find(config, "reading");
    if (!r) return ReadingChoice::both;
    if (!r->is_string()) throw ParseError("'reading' must be a string");
    return parse_reading_choice(r->get<std::string>());
}

Json number_json(double v) { return std::isfinite(v) ? Json(v) : Json(format_number(v)); }

// ---------------------------------------------------------------------------

SuiteReport cmd_identities(const Json& config) {
    require_known_keys(config, {"q", "m", "trials", "seed", "tolerance", "chain_rule_tolerance", "reading"},
                       "identities configuration");
    IdentitiesConfig ic;
    if (const Json* q = find(config, "q")) ic.q_values = int_list(*q, "q");
    if (const Json* m = find(config, "m")) ic.m_values = int_list(*m, "m");
    ic.trials = static_cast<int>(integer_or(config, "trials", ic.trials));
    ic.seed = seed_or(config, ic.seed);
    ic.tolerance = number_or(config, "tolerance", ic.tolerance);
    ic.chain_rule_tolerance = number_or(config, "chain_rule_tolerance", ic.chain_rule_tolerance);
    ic.reading = reading_of(config);
    return run_identities(ic);
}

// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read matrices file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

EndoTuple tuple_of(const Json& config) {
    const Json* inline_json = find(config, "matrices");
    const Json* csv = find(config, "matrices_csv");
    const Json* file = find(config, "matrices_file");
    if ((inline_json != nullptr) + (csv != nullptr) + (file != nullptr) != 1)
        throw ParseError("give exactly one of 'matrices', 'matrices_csv' or 'matrices_file'");
    if (inline_json) {
        if (inline_json->is_array()) {
            Json wrapped = Json::object();
            wrapped["matrices"] = *inline_json;
            return tuple_from_json(wrapped);
        }
        return tuple_from_json(*inline_json);
    }
    const Json& text = csv ? *csv : *file;
    if (!text.is_string()) throw ParseError("matrix source must be a string");
    return csv ? tuple_from_csv(text.get<std::string>()) : tuple_from_text(read_file(text.get<std::string>()));
}

// Each expected entry: {"u":[..], "value": x}; compared with
// |value - x| / max(1, |x|).
void expected_sigma_checks(SuiteReport& report, const SigmaTable& sigma, const Json& expected, double tol) {
    if (!expected.is_array()) throw ParseError("'expected' must be an array of {\"u\", \"value\"}");
    for (const auto& e : expected) {
        require_known_keys(e, {"u", "value"}, "expected entry");
        if (!e.contains("u") || !e.contains("value")) throw ParseError("expected entries need 'u' and 'value'");
        const MultiIndex u = multiindex_from_json(e["u"], sigma.q());
        if (!e["value"].is_number()) throw ParseError("expected value must be a number");
        const double want = e["value"].get<double>();
        const double got = sigma(u);
        report.add(CheckRecord::make("expected sigma_" + u.to_string(), "sigma_u matches the supplied value", got, want,
                                     std::abs(got - want) / std::max(1.0, std::abs(want)), tol));
    }
}

SuiteReport cmd_sigma(const Json& config) {
    require_known_keys(config, {"matrices", "matrices_csv", "matrices_file", "newton", "expected", "tolerance"},
                       "sigma configuration");
    const EndoTuple a = tuple_of(config);
    const double tol = number_or(config, "tolerance", 1e-12);
    SuiteReport report("sigma");

    const SigmaTable sigma = sigma_by_determinant(a);
    const NewtonTable t = gnt_by_recurrence(a, sigma);
    const auto interp = sigma_by_interpolation(a);
    const NewtonTable words = gnt_table_by_explicit_sum(a, sigma);

    double scale = 0;
    for (double v : sigma.values()) scale = std::max(scale, std::abs(v));
    double worst = 0;
    for (std::size_t k = 0; k < sigma.values().size(); ++k)
        worst = std::max(worst, std::abs(sigma.values()[k] - interp.table.values()[k]));
    report.add(CheckRecord::make("sigma_interpolation", "coefficients of det(I + sum_a t_a A_a): elimination = interpolation",
                                 scale, scale, worst / (scale + 1e-300), 1e-9));
    double worst_t = 0, t_scale = 0;
    for (std::size_t k = 0; k < t.values().size(); ++k) {
        worst_t = std::max(worst_t, (t.values()[k] - words.values()[k]).norm());
        t_scale = std::max(t_scale, t.values()[k].norm());
    }
    report.add(CheckRecord::make("explicit_sum", "T_u by word sums equals T_u by recurrence", t_scale, t_scale,
                                 worst_t / (t_scale + 1e-300), 1e-9));
    if (const Json* e = find(config, "expected")) expected_sigma_checks(report, sigma, *e, tol);

    std::vector<MultiIndex> requested;
    if (const Json* n = find(config, "newton")) {
        if (n->is_string() && n->get<std::string>() == "all") {
            requested = t.basis().indices();
        } else if (n->is_array()) {
            for (const auto& u : *n) requested.push_back(multiindex_from_json(u, a.q()));
        } else {
            throw ParseError("'newton' must be \"all\" or an array of multi-indices");
        }
    } else {
        requested = t.basis().indices();
    }
    Json newton = Json::array();
    for (const auto& u : requested) newton.push_back({{"u", to_json(u)}, {"T", to_json(t(u))}});

    report.results()["input"] = to_json(a);
    report.results()["sigma"] = to_json(sigma)["sigma"];
    report.results()["newton"] = std::move(newton);
    report.results()["interpolation_condition"] = interp.condition;

    std::string csv = "u,sigma\n";
    for (std::size_t k = 0; k < sigma.values().size(); ++k)
        csv += "\"" + to_json(sigma.basis()[k]).dump() + "\"," + format_number(sigma.values()[k]) + "\n";
    report.set_csv(std::move(csv));
    return report;
}

// ---------------------------------------------------------------------------

struct Setup {
    std::shared_ptr<const Immersion> immersion;
    ParamGrid grid;
    MultiIndex u;
};

Setup setup_of(const Json& config) {
    auto imm = immersion_from_json(config);
    const Json* grid = find(config, "grid");
    ParamGrid g = grid_from_json(*imm, grid ? *grid : Json());
    const Json* u = find(config, "u");
    if (!u) throw ParseError("configuration needs 'u'");
    return {imm, std::move(g), multiindex_from_json(*u, imm->q())};
}

Json grid_json(const ParamGrid& grid) {
    Json axes = Json::array();
    for (const auto& a : grid.axes()) axes.push_back({{"rule", std::string(to_string(a.rule))}, {"n", a.n}});
    return {{"axes", std::move(axes)}};
}

Json immersion_json(const Immersion& imm) {
    return {{"name", imm.name()}, {"ambient", imm.ambient().to_string()}, {"m", imm.m()}, {"q", imm.q()}};
}

void validation_checks(SuiteReport& report, const Discretization& d) {
    const auto v = validate(d.sample, d.geom);
    const double tol = 1e-9;
    report.add(CheckRecord::make("frame orthonormality", "<nu^a, nu^b> = delta_ab", v.frame_orthonormality, 0,
                                 v.frame_orthonormality, tol));
    report.add(CheckRecord::make("frame tangency", "<nu^a, d_i psi> = 0", v.frame_tangency, 0, v.frame_tangency, tol));
    report.add(CheckRecord::make("self-adjoint shape operators", "g A_a is symmetric", v.self_adjointness, 0,
                                 v.self_adjointness, tol));
    if (d.sample.ambient.kind == AmbientKind::sphere)
        report.add(CheckRecord::make("sphere constraint", "|psi| = 1 with tangents and normals orthogonal to psi",
                                     v.sphere_constraint, 0, v.sphere_constraint, tol));
    report.results()["validation"] = {{"frame_orthonormality", v.frame_orthonormality},
                                      {"frame_tangency", v.frame_tangency},
                                      {"sphere_constraint", v.sphere_constraint},
                                      {"self_adjointness", v.self_adjointness},
                                      {"connection_antisymmetry", v.connection_antisymmetry},
                                      {"min_metric_eigenvalue", v.min_metric_eigenvalue},
                                      {"flatness", flatness_residual(d.geom)}};
}

SuiteReport cmd_functional(const Json& config) {
    require_known_keys(config, {"immersion", "params", "grid", "u", "expected", "tolerance"},
                       "functional configuration");
    const Setup s = setup_of(config);
    const Discretization d = discretize(*s.immersion, s.grid);
    SuiteReport report("functional");
    validation_checks(report, d);

    const double value = functional(d, s.u);
    const double volume = functional(d, MultiIndex::zero(s.immersion->q()));
    if (const Json* e = find(config, "expected")) {
        if (!e->is_number()) throw ParseError("'expected' must be a number");
        const double want = e->get<double>();
        report.add(CheckRecord::make("expected value", "integral of sigma_u dV matches the supplied value", value, want,
                                     std::abs(value - want) / std::max(1.0, std::abs(want)),
                                     number_or(config, "tolerance", 1e-8)));
    }
    report.results()["immersion"] = immersion_json(*s.immersion);
    report.results()["grid"] = grid_json(s.grid);
    report.results()["u"] = to_json(s.u);
    report.results()["value"] = number_json(value);
    report.results()["volume"] = number_json(volume);

    std::string csv;
    for (int i = 0; i < s.immersion->m(); ++i) csv += "x" + std::to_string(i) + ",";
    csv += "weight,sqrt_det_g,sigma_u\n";
    const auto field = sigma_field(d.sigma, s.u);
    for (std::size_t k = 0; k < d.sample.nodes.size(); ++k) {
        for (double x : d.sample.nodes[k].x) csv += format_number(x) + ",";
        csv += format_number(d.sample.nodes[k].weight) + "," + format_number(d.geom[k].sqrt_det) + "," +
               format_number(field[k]) + "\n";
    }
    report.set_csv(std::move(csv));
    return report;
}

// ---------------------------------------------------------------------------

SuiteReport cmd_variation(const Json& config) {
    require_known_keys(config, {"immersion", "params", "grid", "u", "field", "c", "steps", "expected", "tolerance_rel",
                                "tolerance_abs", "expected_tolerance", "seed", "reading"},
                       "variation configuration");
    const Setup s = setup_of(config);
    const Immersion& imm = *s.immersion;
    Json field_config = find(config, "field") ? *find(config, "field") : Json();
    if (field_config.is_object() && field_config.contains("random") && field_config["random"].is_object() &&
        !field_config["random"].contains("seed") && config.contains("seed"))
        field_config["random"]["seed"] = config["seed"];
    const VariationField field = field_from_json(field_config, imm.q(), imm.m());
    field.check(imm.q(), imm.m());
    const double c = number_or(config, "c", imm.ambient().curvature());
    std::vector<double> steps = default_fd_steps();
    if (const Json* st = find(config, "steps")) {
        if (!st->is_array() || st->size() < 2) throw ParseError("'steps' must be an array of at least two step sizes");
        steps.clear();
        for (const auto& h : *st) {
            if (!h.is_number() || h.get<double>() <= 0) throw ParseError("steps must be positive numbers");
            steps.push_back(h.get<double>());
        }
    }
    const double rel = number_or(config, "tolerance_rel", 1e-6);
    const double abs = number_or(config, "tolerance_abs", 1e-8);
    const ReadingChoice choice = reading_of(config);

    const Discretization d = discretize(imm, s.grid);
    SuiteReport report("variation");
    validation_checks(report, d);

    const double comp = analytic_first_variation(d, field, s.u, c, Reading::componentwise);
    const double lit = analytic_first_variation(d, field, s.u, c, Reading::literal);
    const auto fd = fd_first_variation(imm, s.grid, field, s.u, steps);
    const char* anchor = "first variation of integral sigma_u dV: formula = finite difference";
    auto rec = agreement_record("formula vs finite difference (componentwise)", anchor, comp, fd.value, rel, abs);
    rec.informational = choice == ReadingChoice::literal;
    report.add(rec);
    rec = agreement_record("formula vs finite difference (literal)", anchor, lit, fd.value, rel, abs);
    rec.informational = choice != ReadingChoice::literal;
    report.add(rec);
    report.add(CheckRecord::make("extrapolation converged", "successive central differences settle",
                                 fd.converged ? 1 : 0, 1, fd.converged ? 0 : 1, 0, true));
    if (const Json* e = find(config, "expected")) {
        if (!e->is_number()) throw ParseError("'expected' must be a number");
        const double want = e->get<double>();
        const double asserted = choice == ReadingChoice::literal ? lit : comp;
        report.add(CheckRecord::make("expected value", "first variation matches the supplied value", asserted, want,
                                     std::abs(asserted - want) / std::max(1.0, std::abs(want)),
                                     number_or(config, "expected_tolerance", 1e-8)));
    }

    report.results()["immersion"] = immersion_json(imm);
    report.results()["grid"] = grid_json(s.grid);
    report.results()["u"] = to_json(s.u);
    report.results()["c"] = c;
    report.results()["field"] = to_json(field);
    report.results()["analytic"] = {{"componentwise", number_json(comp)}, {"literal", number_json(lit)}};
    report.results()["fd"] = {{"value", number_json(fd.value)},
                              {"error", number_json(fd.error)},
                              {"converged", fd.converged},
                              {"steps", fd.steps},
                              {"central", fd.central}};

    std::string csv = "step,central_difference,extrapolated,analytic_componentwise,analytic_literal\n";
    for (std::size_t k = 0; k < fd.steps.size(); ++k)
        csv += format_number(fd.steps[k]) + "," + format_number(fd.central[k]) + "," + format_number(fd.value) + "," +
               format_number(comp) + "," + format_number(lit) + "\n";
    report.set_csv(std::move(csv));
    return report;
}

// ---------------------------------------------------------------------------

Json minimality_json(const MinimalityReport& r) {
    Json checked = Json::array();
    for (const auto& v : r.checked) checked.push_back(to_json(v));
    return {{"minimality_residual", number_json(r.minimality_residual)},
            {"identity_residual", number_json(r.identity_residual)},
            {"off_direction_residual", number_json(r.off_direction_residual)},
            {"checked", std::move(checked)},
            {"minimal", r.minimal}};
}

SuiteReport cmd_minimality(const Json& config) {
    require_known_keys(config, {"immersion", "params", "grid", "u", "tolerance", "identity_tolerance",
                                "expect_minimal", "reading"},
                       "minimality configuration");
    const Setup s = setup_of(config);
    const double tol = number_or(config, "tolerance", 1e-10);
    const double identity_tol = number_or(config, "identity_tolerance", 1e-8);
    const ReadingChoice choice = reading_of(config);
    const Discretization d = discretize(*s.immersion, s.grid);
    const bool sphere = s.immersion->ambient().kind == AmbientKind::sphere;
    SuiteReport report("minimality");
    validation_checks(report, d);

    auto evaluate = [&](Reading reading) {
        return sphere ? sphere_minimality(d, s.u, reading, tol) : euclidean_minimality(d, s.u, reading, tol);
    };
    const Reading asserted = choice == ReadingChoice::literal ? Reading::literal : Reading::componentwise;
    const MinimalityReport main = evaluate(asserted);
    const char* anchor = sphere ? "sigma_u-minimal in S^n: contraction(e_g) = (m + 1 - |u|) sigma_{g_flat(u)}"
                                : "sigma_u-minimal in R^n: sigma_v = 0 for every |v| = |u| + 1";
    if (const Json* e = find(config, "expect_minimal")) {
        if (!e->is_boolean()) throw ParseError("'expect_minimal' must be true or false");
        const bool want = e->get<bool>();
        report.add(CheckRecord::make(std::string(want ? "is" : "is not") + " sigma_" + s.u.to_string() + "-minimal",
                                     anchor, main.minimality_residual, tol, main.minimal == want ? 0 : 1, 0));
    } else {
        report.add(CheckRecord::make("minimality residual", anchor, main.minimality_residual, 0,
                                     main.minimality_residual, tol, true));
    }
    if (!sphere)
        report.add(CheckRecord::make("Euclidean identity along each frame direction",
                                     "<psi_{,ij} T_u^{ij}, N> = contraction(e_g) for N = nu^g", main.identity_residual,
                                     0, main.identity_residual, identity_tol));

    report.results()["immersion"] = immersion_json(*s.immersion);
    report.results()["grid"] = grid_json(s.grid);
    report.results()["u"] = to_json(s.u);
    report.results()[std::string(to_string(asserted))] = minimality_json(main);
    if (choice == ReadingChoice::both) report.results()["literal"] = minimality_json(evaluate(Reading::literal));
    report.set_csv(report.records_csv());
    return report;
}

// ---------------------------------------------------------------------------

SuiteReport cmd_check_all(const Json& config) {
    require_known_keys(config, {"seed", "trials", "reading"}, "check-all configuration");
    AcceptanceConfig ac;
    ac.seed = seed_or(config, ac.seed);
    ac.trials = static_cast<int>(integer_or(config, "trials", ac.trials));
    reading_of(config);
    SuiteReport report("check-all");
    Json criteria = Json::array();
    Json timing = Json::array();
    for (auto& c : run_acceptance(ac)) {
        for (auto rec : c.checks) {
            rec.name = "criterion " + std::to_string(c.id) + ": " + rec.name;
            report.add(std::move(rec));
        }
        criteria.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.checks_passed()}, {"details", c.details}});
        timing.push_back({{"id", c.id},
                          {"seconds", c.seconds},
                          {"budget_seconds", c.budget_seconds},
                          {"within_budget", c.within_budget()}});
    }
    report.results()["criteria"] = std::move(criteria);
    report.metadata()["criteria"] = std::move(timing);
    report.set_csv(report.records_csv());
    return report;
}

}  // namespace

const std::vector<std::string_view>& command_names() {
    static const std::vector<std::string_view> names{"identities", "sigma",      "functional",
                                                     "variation",  "minimality", "check-all"};
    return names;
}

SuiteReport run_command(std::string_view command, const Json& config) {
    if (!config.is_object()) throw ParseError("configuration must be a JSON object");
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report = [&] {
        if (command == "identities") return cmd_identities(config);
        if (command == "sigma") return cmd_sigma(config);
        if (command == "functional") return cmd_functional(config);
        if (command == "variation") return cmd_variation(config);
        if (command == "minimality") return cmd_minimality(config);
        if (command == "check-all") return cmd_check_all(config);
        throw ParseError("unknown command '" + std::string(command) + "'");
    }();
    if (command == "identities") report.set_csv(report.records_csv());
    report.set_config(config);
    report.set_runtime(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return report;
}

}  // namespace gnt
