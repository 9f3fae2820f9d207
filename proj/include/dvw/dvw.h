#ifndef DVW_DVW_H
#define DVW_DVW_H

/* C interface to the de Vries duality workbench. Strings returned by the
 * library stay valid until the owning handle is freed; dvw_last_error()
 * is per thread and valid until the next call on that thread. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define DVW_API __declspec(dllexport)
#else
#define DVW_API __attribute__((visibility("default")))
#endif

typedef enum {
  DVW_OK = 0,
  DVW_CHECK_FAILED = 1,
  DVW_INPUT_ERROR = 2,
  DVW_INTERNAL_ERROR = 3
} dvw_status;

typedef enum { DVW_FORMAT_JSON = 0, DVW_FORMAT_TEXT = 1 } dvw_format;

typedef struct {
  unsigned threshold;         /* T */
  unsigned period;            /* P */
  unsigned witness_threshold; /* T' */
  dvw_format format;
  unsigned universe; /* period of the universe for "maximal"; 0 = P */
} dvw_options;

typedef struct dvw_report dvw_report;
typedef struct dvw_arith_set dvw_arith_set;

DVW_API const char* dvw_version(void);
DVW_API const char* dvw_last_error(void);

/* T=6, P=4, T'=12, JSON. */
DVW_API void dvw_options_default(dvw_options* opts);

/* Runs one verb on structure-file text. The report is produced for every
 * status except DVW_INTERNAL_ERROR with a null `out`. */
DVW_API dvw_status dvw_run(const char* verb, const char* input, const dvw_options* opts,
                           dvw_report** out);
DVW_API const char* dvw_report_text(const dvw_report* report);
DVW_API int dvw_report_exit_code(const dvw_report* report);
DVW_API void dvw_report_free(dvw_report* report);

/* Eventually periodic subsets of N in the `{..} ++ period P residues {..} from T` form. */
DVW_API dvw_status dvw_arith_set_parse(const char* text, dvw_arith_set** out);
DVW_API int dvw_arith_set_contains(const dvw_arith_set* set, uint64_t n);
/* op: 'u' union, 'i' intersection, 'd' difference, 'c' complement (b ignored). */
DVW_API dvw_status dvw_arith_set_binary(char op, const dvw_arith_set* a, const dvw_arith_set* b,
                                        dvw_arith_set** out);
DVW_API const char* dvw_arith_set_print(const dvw_arith_set* set);
DVW_API void dvw_arith_set_free(dvw_arith_set* set);

#ifdef __cplusplus
}
#endif

#endif
