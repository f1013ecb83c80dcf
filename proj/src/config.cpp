#include "gnt/config.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gnt/catalog.hpp"
#include "gnt/errors.hpp"

namespace gnt {

namespace {

const Json* find(const Json& obj, std::string_view key) {
    if (!obj.is_object()) return nullptr;
    const auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const Json& j, std::string_view what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

long long as_integer(const Json& j, std::string_view what) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::floor(v) == v && std::abs(v) < 9e15) return static_cast<long long>(v);
    }
    throw ParseError(std::string(what) + " must be an integer");
}

std::vector<double> number_list(const Json& j, std::string_view what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) out.push_back(as_number(v, what));
    return out;
}

const Json& required(const Json& obj, std::string_view key, std::string_view context) {
    const Json* v = find(obj, key);
    if (!v) throw ParseError(std::string(context) + " needs '" + std::string(key) + "'");
    return *v;
}

ScalarField scalar_field_from_json(const Json& j, int m, std::string_view what) {
    if (j.is_number()) return ScalarField::constant_field(j.get<double>());
    if (!j.is_object()) throw ParseError(std::string(what) + " must be a number or an object");
    require_known_keys(j, {"constant", "terms"}, what);
    ScalarField f;
    f.constant = number_or(j, "constant", 0.0);
    if (const Json* terms = find(j, "terms")) {
        if (!terms->is_array()) throw ParseError(std::string(what) + ".terms must be an array");
        for (const auto& t : *terms) {
            require_known_keys(t, {"coefficient", "frequency", "kind"}, "trigonometric term");
            TrigTerm term;
            term.coefficient = as_number(required(t, "coefficient", "trigonometric term"), "coefficient");
            const Json& freq = required(t, "frequency", "trigonometric term");
            if (!freq.is_array() || static_cast<int>(freq.size()) != m)
                throw ParseError("term frequency must be an array of " + std::to_string(m) + " integers");
            for (const auto& k : freq) term.frequency.push_back(static_cast<int>(as_integer(k, "frequency")));
            const std::string kind = find(t, "kind") ? find(t, "kind")->get<std::string>() : "cos";
            if (kind != "cos" && kind != "sin") throw ParseError("term kind must be 'cos' or 'sin'");
            term.sine = kind == "sin";
            f.terms.push_back(std::move(term));
        }
    }
    return f;
}

Json to_json(const ScalarField& f) {
    if (f.terms.empty()) return f.constant;
    Json terms = Json::array();
    for (const auto& t : f.terms)
        terms.push_back({{"coefficient", t.coefficient}, {"frequency", t.frequency}, {"kind", t.sine ? "sin" : "cos"}});
    return {{"constant", f.constant}, {"terms", std::move(terms)}};
}

}  // namespace

void require_known_keys(const Json& obj, std::initializer_list<std::string_view> allowed, std::string_view context) {
    if (!obj.is_object()) throw ParseError(std::string(context) + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError("unknown key '" + key + "' in " + std::string(context));
    }
}

double number_or(const Json& obj, std::string_view key, double fallback) {
    const Json* v = find(obj, key);
    return v ? as_number(*v, key) : fallback;
}

long long integer_or(const Json& obj, std::string_view key, long long fallback) {
    const Json* v = find(obj, key);
    return v ? as_integer(*v, key) : fallback;
}

std::uint64_t seed_or(const Json& obj, std::uint64_t fallback) {
    const Json* v = find(obj, "seed");
    if (!v) return fallback;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    const long long s = as_integer(*v, "seed");
    if (s < 0) throw ParseError("seed must be non-negative");
    return static_cast<std::uint64_t>(s);
}

EndoTuple tuple_from_json(const Json& j) {
    require_known_keys(j, {"q", "m", "matrices"}, "matrix input");
    const Json& mats = required(j, "matrices", "matrix input");
    if (!mats.is_array() || mats.empty()) throw ParseError("'matrices' must be a non-empty array of matrices");
    std::vector<Matrix> out;
    for (const auto& mat : mats) {
        if (!mat.is_array() || mat.empty()) throw ParseError("each matrix must be a non-empty array of rows");
        const auto rows = static_cast<int>(mat.size());
        Matrix a(rows, rows);
        for (int i = 0; i < rows; ++i) {
            const auto row = number_list(mat[static_cast<std::size_t>(i)], "matrix row");
            if (static_cast<int>(row.size()) != rows) throw ParseError("matrices must be square");
            for (int k = 0; k < rows; ++k) a(i, k) = row[static_cast<std::size_t>(k)];
        }
        out.push_back(std::move(a));
    }
    if (static_cast<int>(out.size()) > kMaxCodim) throw LimitError("at most 4 matrices are supported");
    if (out.front().rows() > kMaxDim) throw LimitError("matrix dimension is limited to 8");
    EndoTuple tuple(std::move(out));
    if (const Json* q = find(j, "q"); q && as_integer(*q, "q") != tuple.q())
        throw ParseError("'q' does not match the number of matrices");
    if (const Json* m = find(j, "m"); m && as_integer(*m, "m") != tuple.m())
        throw ParseError("'m' does not match the matrix dimension");
    return tuple;
}

EndoTuple tuple_from_csv(std::string_view text) {
    std::vector<std::vector<std::vector<double>>> blocks(1);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
        std::istringstream fields(line);
        std::vector<double> row;
        std::string tok;
        while (fields >> tok) {
            double v = 0;
            std::size_t used = 0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw ParseError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
            row.push_back(v);
        }
        if (row.empty()) {
            if (!blocks.back().empty()) blocks.emplace_back();
        } else {
            blocks.back().push_back(std::move(row));
        }
    }
    if (blocks.back().empty()) blocks.pop_back();
    if (blocks.empty()) throw ParseError("no matrices found in CSV input");
    if (static_cast<int>(blocks.size()) > kMaxCodim) throw LimitError("at most 4 matrices are supported");
    std::vector<Matrix> mats;
    for (const auto& b : blocks) {
        const auto n = static_cast<int>(b.size());
        if (n > kMaxDim) throw LimitError("matrix dimension is limited to 8");
        Matrix a(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(b[static_cast<std::size_t>(i)].size()) != n)
                throw ParseError("CSV matrices must be square");
            for (int k = 0; k < n; ++k) a(i, k) = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        mats.push_back(std::move(a));
    }
    return EndoTuple(std::move(mats));
}

EndoTuple tuple_from_text(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("malformed JSON matrix input: ") + e.what());
        }
        return tuple_from_json(j);
    }
    return tuple_from_csv(text);
}

Json to_json(const Matrix& matrix) {
    Json rows = Json::array();
    for (int i = 0; i < matrix.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < matrix.cols(); ++k) row.push_back(matrix(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const EndoTuple& a) {
    Json mats = Json::array();
    for (const auto& m : a.matrices()) mats.push_back(to_json(m));
    return {{"q", a.q()}, {"m", a.m()}, {"matrices", std::move(mats)}};
}

Json to_json(const MultiIndex& u) { return u.entries(); }

Json to_json(const SigmaTable& sigma) {
    Json entries = Json::array();
    for (std::size_t k = 0; k < sigma.basis().size(); ++k)
        entries.push_back({{"u", to_json(sigma.basis()[k])}, {"value", sigma.values()[k]}});
    return {{"q", sigma.q()}, {"m", sigma.m()}, {"sigma", std::move(entries)}};
}

MultiIndex multiindex_from_json(const Json& j, int q) {
    if (!j.is_array()) throw ParseError("multi-index must be an array of non-negative integers");
    std::vector<int> e;
    for (const auto& v : j) {
        const long long x = as_integer(v, "multi-index entry");
        if (x < 0 || x > 64) throw ParseError("multi-index entries must lie in 0..64");
        e.push_back(static_cast<int>(x));
    }
    if (static_cast<int>(e.size()) != q)
        throw ParseError("multi-index needs " + std::to_string(q) + " entries (one per normal direction)");
    return MultiIndex(std::move(e));
}

ReadingChoice parse_reading_choice(std::string_view tag) {
    if (tag == "both") return ReadingChoice::both;
    return parse_reading(tag) == Reading::literal ? ReadingChoice::literal : ReadingChoice::componentwise;
}

std::shared_ptr<const Immersion> immersion_from_json(const Json& config) {
    const Json& name_json = required(config, "immersion", "configuration");
    if (!name_json.is_string()) throw ParseError("'immersion' must be a string");
    const auto name = name_json.get<std::string>();
    static const Json empty = Json::object();
    const Json* found = find(config, "params");
    const Json& p = found ? *found : empty;
    if (name == "round_sphere") {
        require_known_keys(p, {"m", "R"}, "round_sphere params");
        return round_sphere(static_cast<int>(integer_or(p, "m", 2)), number_or(p, "R", 1.0));
    }
    if (name == "flat_torus") {
        require_known_keys(p, {"radii"}, "flat_torus params");
        const Json* radii = find(p, "radii");
        return flat_torus(radii ? number_list(*radii, "radii") : std::vector<double>{1.0, 1.0});
    }
    if (name == "clifford_s3") {
        require_known_keys(p, {"angle", "angle_over_pi"}, "clifford_s3 params");
        if (find(p, "angle") && find(p, "angle_over_pi")) throw ParseError("give either 'angle' or 'angle_over_pi'");
        const double angle = find(p, "angle_over_pi") ? number_or(p, "angle_over_pi", 0.25) * std::numbers::pi
                                                      : number_or(p, "angle", std::numbers::pi / 4);
        return clifford_torus(angle);
    }
    if (name == "bumpy_sphere") {
        require_known_keys(p, {"R", "harmonic", "amplitude"}, "bumpy_sphere params");
        return bumpy_sphere(number_or(p, "R", 1.0), static_cast<int>(integer_or(p, "harmonic", 2)),
                            number_or(p, "amplitude", 0.1));
    }
    if (name == "small_sphere_in_sphere") {
        require_known_keys(p, {"m", "r"}, "small_sphere_in_sphere params");
        return small_sphere_in_sphere(static_cast<int>(integer_or(p, "m", 2)), number_or(p, "r", 0.5));
    }
    throw ParseError("unknown immersion '" + name +
                     "' (expected round_sphere, flat_torus, clifford_s3, bumpy_sphere, small_sphere_in_sphere)");
}

std::vector<int> default_counts(const Immersion& immersion) {
    std::vector<int> counts;
    for (const auto& d : immersion.domain()) {
        const int base = immersion.m() >= 3 ? 16 : 32;
        counts.push_back(d.rule == AxisRule::periodic ? 2 * base : base);
    }
    return counts;
}

ParamGrid grid_from_json(const Immersion& immersion, const Json& grid) {
    if (grid.is_null()) return make_grid(immersion, default_counts(immersion));
    require_known_keys(grid, {"axes", "n"}, "grid");
    const auto dom = immersion.domain();
    std::vector<int> counts;
    if (const Json* n = find(grid, "n")) {
        if (find(grid, "axes")) throw ParseError("grid takes either 'n' or 'axes'");
        if (n->is_number()) {
            counts.assign(dom.size(), static_cast<int>(as_integer(*n, "grid n")));
        } else {
            for (double v : number_list(*n, "grid n")) counts.push_back(static_cast<int>(v));
        }
    } else {
        const Json& axes = required(grid, "axes", "grid");
        if (!axes.is_array()) throw ParseError("grid axes must be an array");
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const Json& ax = axes[i];
            require_known_keys(ax, {"rule", "n"}, "grid axis");
            if (const Json* rule = find(ax, "rule")) {
                if (!rule->is_string()) throw ParseError("grid axis rule must be a string");
                if (i < dom.size() && parse_axis_rule(rule->get<std::string>()) != dom[i].rule)
                    throw PreconditionError("grid axis " + std::to_string(i) + " of " + immersion.name() + " must use " +
                                            std::string(to_string(dom[i].rule)));
            }
            counts.push_back(static_cast<int>(as_integer(required(ax, "n", "grid axis"), "grid axis n")));
        }
    }
    return make_grid(immersion, counts);
}

VariationField field_from_json(const Json& field, int q, int m) {
    if (field.is_null()) {
        return VariationField::constant(std::vector<double>(static_cast<std::size_t>(q), 1.0),
                                        std::vector<double>(static_cast<std::size_t>(m), 0.0));
    }
    require_known_keys(field, {"normal", "tangential", "random"}, "field");
    if (const Json* random = find(field, "random")) {
        if (find(field, "normal") || find(field, "tangential"))
            throw ParseError("field takes either 'random' or explicit components");
        require_known_keys(*random, {"seed", "max_frequency", "normal_amplitude", "tangential_amplitude"},
                           "random field");
        auto rng = Rng::stream(seed_or(*random, 1), {0x6669656c64ULL});
        return random_field(rng, q, m, static_cast<int>(integer_or(*random, "max_frequency", 2)),
                            number_or(*random, "normal_amplitude", 0.5), number_or(*random, "tangential_amplitude", 0.0));
    }
    VariationField f = VariationField::zero(q, m);
    if (const Json* normal = find(field, "normal")) {
        if (!normal->is_array() || static_cast<int>(normal->size()) != q)
            throw ParseError("field.normal needs " + std::to_string(q) + " entries");
        for (int a = 0; a < q; ++a)
            f.normal[static_cast<std::size_t>(a)] = scalar_field_from_json((*normal)[static_cast<std::size_t>(a)], m, "field.normal entry");
    }
    if (const Json* tangential = find(field, "tangential")) {
        if (!tangential->is_array() || static_cast<int>(tangential->size()) != m)
            throw ParseError("field.tangential needs " + std::to_string(m) + " entries");
        for (int l = 0; l < m; ++l)
            f.tangential[static_cast<std::size_t>(l)] =
                scalar_field_from_json((*tangential)[static_cast<std::size_t>(l)], m, "field.tangential entry");
    }
    return f;
}

Json to_json(const VariationField& field) {
    Json normal = Json::array(), tangential = Json::array();
    for (const auto& f : field.normal) normal.push_back(to_json(f));
    for (const auto& f : field.tangential) tangential.push_back(to_json(f));
    return {{"normal", std::move(normal)}, {"tangential", std::move(tangential)}};
}

}  // namespace gnt
