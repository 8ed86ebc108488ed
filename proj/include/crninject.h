#ifndef CRNINJECT_H
#define CRNINJECT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CRNINJECT_BUILDING)
#    define CRN_API __declspec(dllexport)
#  else
#    define CRN_API __declspec(dllimport)
#  endif
#else
#  define CRN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crn_status {
    CRN_OK = 0,
    CRN_ERR_PARSE = 1,
    CRN_ERR_PRECONDITION = 2,
    CRN_ERR_DIMENSION = 3,
    CRN_ERR_CAP = 4,
    CRN_ERR_DOMAIN = 5,
    CRN_ERR_ARGUMENT = 6, /* null handle, bad enum value */
    CRN_ERR_IO = 7,
    CRN_ERR_INTERNAL = 8
} crn_status;

typedef enum crn_verdict {
    CRN_INJECTIVE = 0,
    CRN_NOT_INJECTIVE = 1,
    CRN_ALL_DEGENERATE = 2 /* determinant vanishes identically */
} crn_verdict;

typedef enum crn_class { CRN_CLASS_FIXED = 0, CRN_CLASS_SNS = 1, CRN_CLASS_UNION = 2, CRN_CLASS_WEAK = 3 } crn_class;

typedef enum crn_format { CRN_FORMAT_JSON = 0, CRN_FORMAT_TEXT = 1 } crn_format;

typedef struct crn_network crn_network;
typedef struct crn_influence crn_influence;
typedef struct crn_order crn_order;
typedef struct crn_sign_graph crn_sign_graph;
typedef struct crn_partition crn_partition;

CRN_API const char* crn_version(void);
CRN_API const char* crn_status_name(crn_status s);

/* Message, line and column of the last failure on the calling thread. */
CRN_API const char* crn_last_error(void);
CRN_API int crn_last_error_line(void);
CRN_API int crn_last_error_column(void);

/* Strings handed out by the library; free with crn_string_free. */
CRN_API void crn_string_free(char* s);

CRN_API crn_status crn_network_parse(const char* text, crn_network** out);
CRN_API crn_status crn_network_load(const char* path, crn_network** out);
CRN_API void crn_network_free(crn_network* net);
CRN_API int crn_network_species_count(const crn_network* net);
CRN_API int crn_network_reaction_count(const crn_network* net);
CRN_API crn_status crn_network_print(const crn_network* net, char** out);

/* text may be a keyword ("@complex", "@reaction", "@zero") or full influence text. */
CRN_API crn_status crn_influence_parse(const crn_network* net, const char* text, crn_influence** out);
/* arg is a keyword or a path. */
CRN_API crn_status crn_influence_load(const crn_network* net, const char* arg, crn_influence** out);
CRN_API void crn_influence_free(crn_influence* i);

/* check may be NULL; otherwise every order entry must carry its sign. */
CRN_API crn_status crn_order_parse(const crn_network* net, const char* text, const crn_influence* check,
                                   crn_order** out);
CRN_API crn_status crn_order_load(const crn_network* net, const char* path, const crn_influence* check,
                                  crn_order** out);
CRN_API void crn_order_free(crn_order* v);

CRN_API crn_status crn_sign_graph_parse(const char* text, crn_sign_graph** out);
CRN_API crn_status crn_sign_graph_load(const char* path, crn_sign_graph** out);
CRN_API void crn_sign_graph_free(crn_sign_graph* g);
CRN_API crn_status crn_partition_parse(const crn_sign_graph* g, const char* text, crn_partition** out);
CRN_API crn_status crn_partition_load(const crn_sign_graph* g, const char* path, crn_partition** out);
CRN_API void crn_partition_free(crn_partition* p);

CRN_API crn_status crn_check_sns(const crn_network* net, const crn_influence* i, crn_verdict* out);
CRN_API crn_status crn_check_fixed_order(const crn_network* net, const crn_order* v, crn_verdict* out);
CRN_API crn_status crn_check_bounded_union(const crn_network* net, const crn_influence* lower,
                                           const crn_influence* upper, crn_verdict* out);
CRN_API crn_status crn_check_weakly_monotonic(const crn_network* net, const crn_influence* i, crn_verdict* out);

/* Reports. For CRN_CLASS_UNION, i is the lower and i2 the upper influence;
   CRN_CLASS_FIXED needs v. Unused handles may be NULL. */
CRN_API crn_status crn_report_analyze(const crn_network* net, crn_class cls, const crn_influence* i,
                                      const crn_influence* i2, const crn_order* v, uint64_t seed, crn_format fmt,
                                      char** out);
CRN_API crn_status crn_report_restrict(const crn_network* net, const crn_influence* i, int strict, crn_format fmt,
                                       char** out);
/* strict: fail with CRN_ERR_PRECONDITION unless i <= the reaction influence. */
CRN_API crn_status crn_report_pmatrix(const crn_network* net, const crn_influence* i, int strict, crn_format fmt,
                                      char** out);
/* dot may be NULL. */
CRN_API crn_status crn_report_dsr(const crn_network* net, const crn_influence* i, crn_format fmt, char** out,
                                  char** dot);
CRN_API crn_status crn_report_igraph(const crn_sign_graph* g, const crn_partition* p, crn_format fmt, char** out);
CRN_API crn_status crn_report_oracle(const crn_network* net, const crn_influence* i, int samples, uint64_t seed,
                                     crn_format fmt, char** out);

#ifdef __cplusplus
}
#endif

#endif
