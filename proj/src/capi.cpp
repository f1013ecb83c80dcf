#include "gnt/gnt.h"

#include <new>
#include <string>

#include "gnt/commands.hpp"
#include "gnt/config.hpp"
#include "gnt/errors.hpp"

struct gnt_tuple {
    gnt::EndoTuple tuple;
    gnt::SigmaTable sigma;
    gnt::NewtonTable newton;
};

struct gnt_report {
    bool passed;
    std::string json;
    std::string csv;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_string;

gnt_status fail(gnt_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class F>
gnt_status guarded(F&& body) {
    try {
        body();
        last_error.clear();
        return GNT_OK;
    } catch (const gnt::LimitError& e) {
        return fail(GNT_LIMIT, e.what());
    } catch (const gnt::ParseError& e) {
        return fail(GNT_PARSE, e.what());
    } catch (const gnt::PreconditionError& e) {
        return fail(GNT_PRECONDITION, e.what());
    } catch (const gnt::NumericalError& e) {
        return fail(GNT_NUMERICAL, e.what());
    } catch (const gnt::Json::exception& e) {
        return fail(GNT_PARSE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(GNT_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(GNT_INTERNAL, e.what());
    } catch (...) {
        return fail(GNT_INTERNAL, "unknown failure");
    }
}

gnt_tuple* wrap(gnt::EndoTuple a) {
    gnt::SigmaTable sigma = gnt::sigma_by_determinant(a);
    gnt::NewtonTable newton = gnt::gnt_by_recurrence(a, sigma);
    return new gnt_tuple{std::move(a), std::move(sigma), std::move(newton)};
}

gnt::MultiIndex index_of(const gnt_tuple* t, const int* u) {
    std::vector<int> e(u, u + t->tuple.q());
    for (int v : e)
        if (v < 0) throw gnt::PreconditionError("multi-index entries must be non-negative");
    return gnt::MultiIndex(std::move(e));
}

}  // namespace

extern "C" {

const char* gnt_version(void) { return GNT_VERSION; }

const char* gnt_last_error(void) { return last_error.c_str(); }

gnt_status gnt_tuple_create(int q, int m, const double* entries, gnt_tuple** out) {
    if (!entries || !out) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    if (q < 1 || m < 1) return fail(GNT_INVALID_ARGUMENT, "q and m must be positive");
    if (q > gnt::kMaxCodim || m > gnt::kMaxDim) return fail(GNT_LIMIT, "q <= 4 and m <= 8 are supported");
    return guarded([&] {
        std::vector<gnt::Matrix> mats;
        for (int a = 0; a < q; ++a)
            mats.push_back(Eigen::Map<const gnt::Matrix>(entries + static_cast<std::ptrdiff_t>(a) * m * m, m, m));
        *out = wrap(gnt::EndoTuple(std::move(mats)));
    });
}

gnt_status gnt_tuple_from_json(const char* json, gnt_tuple** out) {
    if (!json || !out) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] { *out = wrap(gnt::tuple_from_json(gnt::Json::parse(json))); });
}

gnt_status gnt_tuple_from_csv(const char* csv, gnt_tuple** out) {
    if (!csv || !out) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] { *out = wrap(gnt::tuple_from_csv(csv)); });
}

void gnt_tuple_free(gnt_tuple* tuple) { delete tuple; }

gnt_status gnt_tuple_shape(const gnt_tuple* tuple, int* q, int* m) {
    if (!tuple || !q || !m) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    *q = tuple->tuple.q();
    *m = tuple->tuple.m();
    last_error.clear();
    return GNT_OK;
}

gnt_status gnt_sigma(const gnt_tuple* tuple, const int* u, double* value) {
    if (!tuple || !u || !value) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] { *value = tuple->sigma(index_of(tuple, u)); });
}

gnt_status gnt_newton(const gnt_tuple* tuple, const int* u, double* out) {
    if (!tuple || !u || !out) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        const gnt::Matrix t = tuple->newton(index_of(tuple, u));
        std::copy(t.data(), t.data() + t.size(), out);
    });
}

gnt_status gnt_sigma_table_json(const gnt_tuple* tuple, const char** json) {
    if (!tuple || !json) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        last_string = gnt::to_json(tuple->sigma).dump();
        *json = last_string.c_str();
    });
}

gnt_status gnt_run(const char* command, const char* config_json, gnt_report** out) {
    if (!command || !config_json || !out) return fail(GNT_INVALID_ARGUMENT, "null pointer argument");
    return guarded([&] {
        gnt::Json config;
        try {
            config = gnt::Json::parse(config_json);
        } catch (const gnt::Json::parse_error& e) {
            throw gnt::ParseError(std::string("malformed configuration JSON: ") + e.what());
        }
        const gnt::SuiteReport report = gnt::run_command(command, config);
        *out = new gnt_report{report.passed(), report.to_json().dump(2) + "\n", report.csv()};
    });
}

int gnt_report_passed(const gnt_report* report) { return report && report->passed ? 1 : 0; }

const char* gnt_report_json(const gnt_report* report) { return report ? report->json.c_str() : ""; }

const char* gnt_report_csv(const gnt_report* report) { return report ? report->csv.c_str() : ""; }

void gnt_report_free(gnt_report* report) { delete report; }

}  // extern "C"
