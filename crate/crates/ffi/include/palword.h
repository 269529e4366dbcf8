#ifndef PALWORD_H
#define PALWORD_H

/* This file is generated by cbindgen from palword-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum PalwordStatus {
  PALWORD_STATUS_OK = 0,
  // A required pointer argument was NULL.
  PALWORD_STATUS_NULL_ARGUMENT = 1,
  // An input string was not valid UTF-8.
  PALWORD_STATUS_INVALID_UTF8 = 2,
  // A literal failed to parse.
  PALWORD_STATUS_PARSE_ERROR = 3,
  // The operation failed its contract (see the last error message).
  PALWORD_STATUS_DOMAIN_ERROR = 4,
  // The library panicked internally; state may be inconsistent.
  PALWORD_STATUS_PANIC = 5,
} PalwordStatus;

// Opaque morphism.
typedef struct PalwordMorphism PalwordMorphism;

// Opaque morphic word: a substitution fixed point behind an optional outer
// morphism, with its defining literals retained.
typedef struct PalwordSpec PalwordSpec;

// Opaque finite word.
typedef struct PalwordWord PalwordWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *palword_version(void);

// Message of the most recent failure on this thread, or NULL. Free with
// `palword_string_free`.
char *palword_last_error_message(void);

// Releases a string allocated by this library.
//
// # Safety
// `s` must be NULL or a pointer previously returned by this library and
// not yet freed.
void palword_string_free(char *s);

// Parses a word literal (one character per letter; the alphabet is
// inferred).
//
// # Safety
// `literal` must be a valid NUL-terminated string; `out` must be valid.
enum PalwordStatus palword_word_parse(const char *literal, struct PalwordWord **out);

// # Safety
// `word` must be NULL or an unfreed handle from this library.
void palword_word_free(struct PalwordWord *word);

// Literal of the word. NULL if `word` is NULL.
//
// # Safety
// `word` must be NULL or a valid handle.
char *palword_word_to_string(const struct PalwordWord *word);

// Length of the word; 0 if `word` is NULL.
//
// # Safety
// `word` must be NULL or a valid handle.
size_t palword_word_len(const struct PalwordWord *word);

// # Safety
// `word` must be NULL or a valid handle.
bool palword_word_is_palindrome(const struct PalwordWord *word);

// Palindromic defect |w| + 1 - |Pal(w)|.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_word_defect(const struct PalwordWord *word, uint64_t *out);

// Richness of the word by the complete-first-return characterization.
//
// # Safety
// `word` must be NULL or a valid handle.
bool palword_word_is_rich(const struct PalwordWord *word);

// Analysis JSON for a finite word: length, palindrome count, defect,
// richness verdict and witness.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_word_analyze_json(const struct PalwordWord *word, char **out);

// Parses a morphism literal like "a->ac;b->acab;c->ab".
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_morphism_parse(const char *literal, struct PalwordMorphism **out);

// # Safety
// `morphism` must be NULL or an unfreed handle.
void palword_morphism_free(struct PalwordMorphism *morphism);

// Rule literal of the morphism. NULL if the handle is NULL.
//
// # Safety
// `morphism` must be NULL or a valid handle.
char *palword_morphism_to_string(const struct PalwordMorphism *morphism);

// Primitivity of an endomorphism.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_morphism_is_primitive(const struct PalwordMorphism *morphism, bool *out);

// Applies the morphism to a word, producing a new word handle.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_morphism_apply(const struct PalwordMorphism *morphism,
                                          const struct PalwordWord *word,
                                          struct PalwordWord **out);

// Classification JSON (classes P, extended P, P_ret, P'). `bound` of 0
// selects the default: the total image length.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_morphism_classify_json(const struct PalwordMorphism *morphism,
                                                  size_t bound,
                                                  char **out);

// Length-`n` prefix of the fixed point of the morphism at `seed`.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_morphism_fixed_point_prefix(const struct PalwordMorphism *morphism,
                                                       const char *seed,
                                                       size_t n,
                                                       struct PalwordWord **out);

// Creates a morphic word: the fixed point of `inner` at `seed`, mapped
// through the optional `outer` morphism (`outer` may be NULL).
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_spec_new(const char *inner,
                                    const char *seed,
                                    const char *outer,
                                    struct PalwordSpec **out);

// Loads a bundled example by name ("thue-morse", "labbe", "labbe-shift2",
// "tau", "derived-labbe").
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_spec_example(const char *name, struct PalwordSpec **out);

// # Safety
// `spec` must be NULL or an unfreed handle.
void palword_spec_free(struct PalwordSpec *spec);

// Length-`n` prefix of the generated word.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_spec_generate(const struct PalwordSpec *spec,
                                         size_t n,
                                         struct PalwordWord **out);

// Analysis JSON of the length-`n` prefix: palindrome count, defect,
// richness-up-to-length and (when not rich) a witness.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_spec_analyze_json(const struct PalwordSpec *spec, size_t n, char **out);

// Derivation JSON at the prefix `at` (NULL for the first letter): return
// words, the derived prefix of length `n`, the connecting morphism and the
// stability record.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_spec_derive_json(const struct PalwordSpec *spec,
                                            const char *at,
                                            size_t n,
                                            char **out);

// Decomposition certificate JSON. Routes through the finite-defect
// reduction when `finite_defect` is set; `verify_len` of 0 skips the
// re-verification block.
//
// # Safety
// Pointers must be valid.
enum PalwordStatus palword_spec_decompose_json(const struct PalwordSpec *spec,
                                               size_t depth,
                                               size_t cmp_len,
                                               bool finite_defect,
                                               size_t marker_bound,
                                               size_t verify_len,
                                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PALWORD_H */
