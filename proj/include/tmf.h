#ifndef TMF_H
#define TMF_H

/* C interface to the modular-functor compiler pipeline: theories, labeled
 * surfaces, mapping-class words, circuits, bordisms. Handles are opaque;
 * every fallible call returns a status code and leaves a message readable
 * through tmf_last_error() on failure. Strings handed out by the library
 * are released with tmf_string_free(). */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int tmf_status;

enum {
  TMF_OK = 0,
  TMF_ERR_USAGE = 1,
  TMF_ERR_CONSISTENCY = 2,
  TMF_ERR_PARSE = 3,
  TMF_ERR_IO = 4,
  TMF_ERR_UNSUPPORTED_SURFACE = 5,
  TMF_ERR_ILLEGAL_LITERAL = 6,
  TMF_ERR_ROUTING = 7,
  TMF_ERR_CAP_EXCEEDED = 8,
  TMF_ERR_DIMENSION = 9,
  TMF_ERR_EMPTY_SPACE = 10,
  TMF_ERR_INTERNAL = 11
};

typedef struct tmf_theory tmf_theory;
typedef struct tmf_surface tmf_surface;
typedef struct tmf_circuit tmf_circuit;

/* Message for the most recent failure on the calling thread; empty string
 * when nothing failed yet. The pointer stays valid until the next failing
 * call on the same thread. */
const char* tmf_last_error(void);

/* Stable short name for a status code ("ok", "parse", ...). */
const char* tmf_status_name(tmf_status status);

void tmf_string_free(char* s);

/* ---- theories ---- */

/* Parse a theory file and check every consistency identity against the
 * file's tolerance. */
tmf_status tmf_theory_load(const char* text, tmf_theory** out);

/* Re-run the validators: worst residual over all identities, and optionally
 * a per-identity report ("<identity> = <residual>" lines). Either output
 * pointer may be NULL. */
tmf_status tmf_theory_validate(const tmf_theory* th, double* worst, char** report);

int tmf_theory_p(const tmf_theory* th);
int tmf_theory_nlabels(const tmf_theory* th);

/* Byte-stable text of a built-in theory: "fibonacci", "semion", "trivial". */
tmf_status tmf_theory_builtin(const char* name, char** text);

void tmf_theory_free(tmf_theory* th);

/* ---- surfaces ---- */

tmf_status tmf_surface_parse(const tmf_theory* th, const char* text,
                             tmf_surface** out);
tmf_status tmf_surface_format(const tmf_theory* th, const tmf_surface* s,
                              char** text);

int tmf_surface_genus(const tmf_surface* s);
int tmf_surface_pants(const tmf_surface* s);
int tmf_surface_cuffs(const tmf_surface* s);
int tmf_surface_boundary(const tmf_surface* s);

void tmf_surface_free(tmf_surface* s);

/* dim V for the surface described by the file's genus and boundary lines.
 * Accepts the shapes without a pants decomposition (disk, annulus, bare
 * sphere or torus), which get their axiom values. */
tmf_status tmf_dim(const tmf_theory* th, const char* surface_text,
                   long long* dim);

/* ---- compilation ---- */

/* mode: "generic", "braid7", "cerf"; NULL means "generic". Writes the
 * compiled circuit and, when report is non-NULL, a key = value plan text.
 * braid7 wants a genus-0 surface whose punctures all carry one label. */
tmf_status tmf_compile(const tmf_theory* th, const tmf_surface* s,
                       const char* word_text, const char* mode,
                       tmf_circuit** out, char** report);

/* Seeded word over the generator catalog of the surface; deterministic for
 * a fixed seed. The text parses back with the word-file grammar. */
tmf_status tmf_random_word(const tmf_theory* th, const tmf_surface* s,
                           int length, unsigned long long seed, char** text);

/* ---- circuits ---- */

tmf_status tmf_circuit_parse(const char* text, tmf_circuit** out);
tmf_status tmf_circuit_format(const tmf_circuit* c, char** text);

int tmf_circuit_qupits(const tmf_circuit* c);
int tmf_circuit_p(const tmf_circuit* c);
int tmf_circuit_ancillas(const tmf_circuit* c);
long long tmf_circuit_gates(const tmf_circuit* c);

/* State dimension p^k * 2^ancillas, capped to keep amplitude buffers sane. */
tmf_status tmf_circuit_dim(const tmf_circuit* c, unsigned long long max_amps,
                           unsigned long long* dim);

/* Apply the whole circuit. in and out are interleaved re,im pairs of length
 * 2*dim; dim must equal the circuit's state dimension. */
tmf_status tmf_circuit_run(const tmf_circuit* c, const double* in,
                           unsigned long long dim, double* out);

void tmf_circuit_free(tmf_circuit* c);

/* ---- verification ---- */

/* compile -> embed -> brute-force reference -> intertwining check, all on
 * the given surface and word. Outputs may be NULL; the report carries the
 * residual, phase, leakage, dimensions and gate counts as key = value
 * lines. max_dim / max_state of 0 pick the library defaults. */
tmf_status tmf_verify(const tmf_theory* th, const tmf_surface* s,
                      const char* word_text, const char* mode,
                      unsigned long long max_dim, unsigned long long max_state,
                      double* residual, double* phase_re, double* phase_im,
                      double* leakage, char** report);

/* ---- bordisms ---- */

/* Compile a bordism file (moves plus 2-handles) into a partial circuit:
 * the circuit text gains an ancilla header and flip gate lines. The report
 * summarizes moves, handles and the target surface. */
tmf_status tmf_bordism(const tmf_theory* th, const tmf_surface* s,
                       const char* bordism_text, char** circuit_text,
                       char** report);

#ifdef __cplusplus
}
#endif

#endif /* TMF_H */
