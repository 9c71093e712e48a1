#ifndef INTERNLOG_H
#define INTERNLOG_H

/* C interface to the interning tabled-logic engine.
 *
 * Engines and queries are opaque handles. Every fallible call returns an
 * ilog_status; the human-readable message of the most recent failure is kept
 * per engine (ilog_last_error) or, for engine-less calls, in a process-wide
 * buffer (ilog_bench_last_error).
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ilog_engine ilog_engine;
typedef struct ilog_query ilog_query;

typedef enum ilog_status {
  ILOG_OK = 0,
  ILOG_ERR_SYNTAX = -1,  /* malformed program or goal text */
  ILOG_ERR_EVAL = -2,    /* runtime refusal (type error, undefined call, ...) */
  ILOG_ERR_IO = -3,      /* file could not be read */
  ILOG_ERR_BUDGET = -4,  /* table node budget exceeded */
  ILOG_ERR_INVALID = -5  /* null handle or bad argument */
} ilog_status;

const char* ilog_version(void);

ilog_engine* ilog_engine_new(void);
void ilog_engine_free(ilog_engine* e);

/* Message of the most recent failing call on this engine, empty if none.
 * Valid until the next failing call on the same engine. */
const char* ilog_last_error(const ilog_engine* e);

ilog_status ilog_consult_text(ilog_engine* e, const char* text);
ilog_status ilog_consult_file(ilog_engine* e, const char* path);

/* Node budget shared by all call and answer tables (default 50,000,000). */
ilog_status ilog_set_table_node_budget(ilog_engine* e, uint64_t nodes);

/* Proves goal_text to exhaustion and materializes one rendered line per
 * answer: "X = t, Y = u" over the goal's named variables, or "yes" when it
 * has none. A failed goal yields a query with zero answers. */
ilog_status ilog_query_open(ilog_engine* e, const char* goal_text,
                            ilog_query** out);
size_t ilog_query_count(const ilog_query* q);
/* Answer line i (0-based), NULL when out of range. Valid until close. */
const char* ilog_query_answer(const ilog_query* q, size_t i);
void ilog_query_close(ilog_query* q);

typedef struct ilog_intern_stats {
  uint64_t records;        /* structure records + list records */
  uint64_t list_records;
  uint64_t cells_used;     /* arena words, including link words */
  uint64_t bytes_estimate; /* records*(slots+2)*8 + bucket arrays */
  uint64_t probes;         /* cumulative bucket-chain records examined */
  uint64_t resizes;
} ilog_intern_stats;

typedef struct ilog_table_stats {
  uint64_t nodes;          /* symbol nodes over all call + answer tries */
  uint64_t leaves;
  uint64_t call_symbols;   /* symbols of sequences that created a call leaf */
  uint64_t answer_symbols;
  uint64_t bytes_estimate; /* nodes * 4 slots * 8 bytes */
  uint64_t entries;
} ilog_table_stats;

ilog_status ilog_get_intern_stats(const ilog_engine* e, ilog_intern_stats* out);
ilog_status ilog_get_table_stats(const ilog_engine* e, ilog_table_stats* out);

typedef struct ilog_bench_row {
  char bench[32];
  uint64_t n;
  char mode[8]; /* "intern" or "plain" */
  double cpu_ms;
  uint64_t trie_nodes;
  uint64_t table_bytes;
  uint64_t intern_records;
  uint64_t intern_bytes;
  char result[32]; /* "recognized", "rejected", or a count */
  int exceeded;    /* nonzero: budget hit; CSV renders xx columns */
} ilog_bench_row;

/* Runs one named benchmark on a private engine. name is one of intern_list,
 * islist, epal, lr, find; mode is "intern" or "plain". A budget overrun is
 * reported in the row (exceeded = 1), not as an error status. */
ilog_status ilog_bench_run(const char* name, uint64_t n, const char* mode,
                           uint64_t seed, uint64_t max_table_nodes,
                           ilog_bench_row* out);
/* Message of the most recent ilog_bench_run failure; process-wide buffer. */
const char* ilog_bench_last_error(void);

/* CSV header line, no trailing newline; static storage. */
const char* ilog_bench_csv_header(void);
/* Formats row as one CSV line (no newline) into buf. Returns the length
 * required excluding the terminator, like snprintf; negative on bad args. */
int ilog_bench_csv_row(const ilog_bench_row* row, char* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* INTERNLOG_H */
