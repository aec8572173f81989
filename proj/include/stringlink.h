/* C interface to the stringlink library.
 *
 * Every function returns an sl_status. On failure the message is available
 * from sl_last_error() (thread-local, valid until the next call on the same
 * thread). Strings returned through char** out-parameters are heap allocated
 * and must be released with sl_free_string(). Handles are released with their
 * matching *_free function. All documents are JSON; the schema is described
 * in docs/json-schema.md. */
#ifndef STRINGLINK_H
#define STRINGLINK_H

#include <stdint.h>

#if defined(_WIN32)
#  define SL_API __declspec(dllexport)
#else
#  define SL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_PARSE = 1,
  SL_ERR_PRECONDITION = 2,
  SL_ERR_INTERNAL = 3,
  SL_ERR_INVALID_ARGUMENT = 4
} sl_status;

typedef enum sl_milnor_mode {
  SL_MILNOR_TOTAL = 0,     /* degrees 1..N-1 */
  SL_MILNOR_DEGREE = 1,    /* degree k, input in filtration level k */
  SL_MILNOR_TRUNCATED = 2  /* degrees k..2k-1, input in filtration level k */
} sl_milnor_mode;

typedef enum sl_strategy {
  SL_STRATEGY_CANONICAL = 0,
  SL_STRATEGY_RANDOMIZED = 1
} sl_strategy;

typedef struct sl_input sl_input;         /* pure braid or longitude tuple */
typedef struct sl_expansion sl_expansion; /* truncated special expansion */

SL_API const char* sl_version(void);
SL_API const char* sl_last_error(void);
SL_API void sl_free_string(char* s);

/* Inputs. */
SL_API sl_status sl_input_from_braid(const char* text, int strands, sl_input** out);
SL_API sl_status sl_input_from_longitudes(const char* json, sl_input** out);
SL_API void sl_input_free(sl_input* input);
SL_API int sl_input_rank(const sl_input* input);
/* Product (a then b in the stacking convention). Both must be braids. */
SL_API sl_status sl_input_product(const sl_input* a, const sl_input* b, sl_input** out);

/* Expansions. */
SL_API sl_status sl_expansion_build(int n, int N, sl_strategy strategy, uint64_t seed, sl_expansion** out);
SL_API sl_status sl_expansion_from_json(const char* json, sl_expansion** out);
SL_API sl_status sl_expansion_to_json(const sl_expansion* e, char** json);
SL_API sl_status sl_expansion_check(const sl_expansion* e, char** json);
SL_API int sl_expansion_truncation(const sl_expansion* e);
SL_API void sl_expansion_free(sl_expansion* e);

/* Computations. A NULL expansion means a canonical special expansion of
 * the required truncation, built on demand. */
SL_API sl_status sl_longitudes(const sl_input* input, char** json);
SL_API sl_status sl_milnor_level(const sl_input* input, int max_k, int* level);
SL_API sl_status sl_milnor(const sl_input* input, const sl_expansion* e, sl_milnor_mode mode, int k, int N,
                           char** json);
SL_API sl_status sl_trees(const sl_input* input, const sl_expansion* e, int k, char** json);
SL_API sl_status sl_homology(int n, int k, char** json);
SL_API sl_status sl_morita(const sl_input* input, const sl_expansion* e, int k, char** json);
/* Runs the property suite on one input assumed to lie in filtration level
 * k. Sets *all_passed; the document lists each check. */
SL_API sl_status sl_verify(const sl_input* input, int k, uint64_t seed, int* all_passed, char** json);

#ifdef __cplusplus
}
#endif

#endif /* STRINGLINK_H */
