#ifndef RELATOR_CAPI_H
#define RELATOR_CAPI_H

/* C interface to the relator analysis library: opaque handles, integer
 * status codes, thread-local error strings.  All returned strings are owned
 * by the handle they came from and live until it is freed. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rl_document rl_document;
typedef struct rl_report rl_report;

/* Status codes for rl_* calls. */
enum {
  RL_OK = 0,
  RL_ERROR = 1
};

const char* rl_version(void);

/* Last error message of the calling thread; empty string if none. */
const char* rl_last_error(void);

/* Parse a document from text or from a file (the file's directory resolves
 * `table` references).  NULL on failure; see rl_last_error(). */
rl_document* rl_parse_document(const char* text);
rl_document* rl_parse_file(const char* path);
void rl_document_free(rl_document* doc);

/* Canonical re-emission of the document. */
const char* rl_document_print(rl_document* doc);

/* Run a command.  options_json is a JSON object; recognized keys:
 *   command (string, required), args (array of strings),
 *   window, degree_bound, weight_bound (ints), oracle, timing (bools),
 *   format ("text" | "machine").
 * NULL only on invalid arguments; command failures produce a report whose
 * exit code is nonzero. */
rl_report* rl_run(rl_document* doc, const char* options_json);
void rl_report_free(rl_report* rep);

/* Exit code convention: 0 success, 2 property absent, 1 error. */
int rl_report_exit_code(const rl_report* rep);
const char* rl_report_json(rl_report* rep);
/* Rendered per the requested format. */
const char* rl_report_text(rl_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* RELATOR_CAPI_H */
