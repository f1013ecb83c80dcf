#ifndef GNT_GNT_H
#define GNT_GNT_H

#include <stddef.h>

#if defined(_WIN32)
#define GNT_API __declspec(dllexport)
#else
#define GNT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gnt_status {
    GNT_OK = 0,
    GNT_INVALID_ARGUMENT = 1, /* null pointer, out-of-range index, bad shape */
    GNT_LIMIT = 2,            /* documented size limit exceeded */
    GNT_PARSE = 3,            /* malformed JSON, CSV or configuration */
    GNT_PRECONDITION = 4,     /* well-formed input violating a precondition */
    GNT_NUMERICAL = 5,        /* numerical procedure failed */
    GNT_INTERNAL = 6
} gnt_status;

typedef struct gnt_tuple gnt_tuple;
typedef struct gnt_report gnt_report;

/* Library version, e.g. "1.0.0". */
GNT_API const char* gnt_version(void);

/* Message of the last failure on the calling thread; "" after success. */
GNT_API const char* gnt_last_error(void);

/* q matrices of size m x m, row-major, stored back to back (q*m*m doubles). */
GNT_API gnt_status gnt_tuple_create(int q, int m, const double* entries, gnt_tuple** out);
/* {"matrices":[[[..],..],..]} with optional "q" and "m". */
GNT_API gnt_status gnt_tuple_from_json(const char* json, gnt_tuple** out);
/* One matrix per block of rows, blocks separated by blank lines. */
GNT_API gnt_status gnt_tuple_from_csv(const char* csv, gnt_tuple** out);
GNT_API void gnt_tuple_free(gnt_tuple* tuple);
GNT_API gnt_status gnt_tuple_shape(const gnt_tuple* tuple, int* q, int* m);

/* sigma_u for the multi-index u (q entries); 0 when |u| > m. */
GNT_API gnt_status gnt_sigma(const gnt_tuple* tuple, const int* u, double* value);
/* T_u written row-major into out (m*m doubles). */
GNT_API gnt_status gnt_newton(const gnt_tuple* tuple, const int* u, double* out);
/* {"q","m","sigma":[{"u":[..],"value":..},..]}; the string lives until the
   next call on this thread that returns a string. */
GNT_API gnt_status gnt_sigma_table_json(const gnt_tuple* tuple, const char** json);

/* Runs a command (identities, sigma, functional, variation, minimality,
   check-all) with a JSON configuration. */
GNT_API gnt_status gnt_run(const char* command, const char* config_json, gnt_report** out);
/* 1 when every asserted check passed. */
GNT_API int gnt_report_passed(const gnt_report* report);
/* Strings owned by the report, valid until gnt_report_free. */
GNT_API const char* gnt_report_json(const gnt_report* report);
GNT_API const char* gnt_report_csv(const gnt_report* report);
GNT_API void gnt_report_free(gnt_report* report);

#ifdef __cplusplus
}
#endif

#endif
