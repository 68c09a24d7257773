#ifndef GRSSD_H
#define GRSSD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GRSSD_API __declspec(dllexport)
#else
#define GRSSD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum grssd_status {
    GRSSD_OK = 0,
    GRSSD_E_INVALID_ARGUMENT = 1,
    GRSSD_E_VALIDATION = 2,
    GRSSD_E_VERIFICATION = 3,
    GRSSD_E_MALFORMED = 4,
    GRSSD_E_IO = 5,
    GRSSD_E_SELFTEST = 6,
    GRSSD_E_INTERNAL = 7
} grssd_status;

typedef struct grssd_field grssd_field;
typedef struct grssd_code grssd_code;
typedef struct grssd_census grssd_census;

/* message of the last failing call on this thread; never NULL */
GRSSD_API const char* grssd_last_error(void);
GRSSD_API const char* grssd_status_name(grssd_status s);
GRSSD_API const char* grssd_version(void);
/* strings returned through char** out-parameters are released here */
GRSSD_API void grssd_string_free(char* s);

/* GF(p^(2m)); q must not exceed 2^26 */
GRSSD_API grssd_status grssd_field_create(uint64_t p, uint64_t m, grssd_field** out);
/* q_cap 0 keeps the default cap */
GRSSD_API grssd_status grssd_field_create_ex(uint64_t p, uint64_t m, uint64_t q_cap, grssd_field** out);
/* field for r = p^m given r itself */
GRSSD_API grssd_status grssd_field_create_r(uint64_t r, uint64_t q_cap, grssd_field** out);
GRSSD_API void grssd_field_destroy(grssd_field* f);
GRSSD_API uint64_t grssd_field_q(const grssd_field* f);
GRSSD_API uint64_t grssd_field_r(const grssd_field* f);
/* key=value lines: p, m, r, q, modulus, generator order certificate */
GRSSD_API grssd_status grssd_field_info(const grssd_field* f, char** out);

typedef struct grssd_build_options {
    int allow_size_mismatch;
    int matrix_method; /* -1 automatic, 0 off, 1 on */
    int mds;           /* -1 automatic (n <= 16), 0 off, 1 on */
    uint64_t samples;  /* randomized codeword-pair checks */
    uint64_t seed;
    uint32_t threads;  /* 0: hardware concurrency */
} grssd_build_options;

GRSSD_API void grssd_build_options_init(grssd_build_options* o);

/* tag: thm2 thm3 thm4 cor1 thm5 thm6 cor2 cor3; params: "k=v,k=v".
   GRSSD_E_VALIDATION leaves *out NULL. GRSSD_E_VERIFICATION still returns a handle
   whose summary explains the failure. */
GRSSD_API grssd_status grssd_build(const grssd_field* f, const char* tag, const char* params,
                                   const grssd_build_options* o, grssd_code** out);
GRSSD_API void grssd_code_destroy(grssd_code* c);
GRSSD_API int grssd_code_verified(const grssd_code* c);
GRSSD_API uint64_t grssd_code_length(const grssd_code* c);
GRSSD_API uint64_t grssd_code_set_size(const grssd_code* c);
/* key=value lines */
GRSSD_API grssd_status grssd_code_summary(const grssd_code* c, char** out);
GRSSD_API grssd_status grssd_code_write_set(const grssd_code* c, const char* path);
GRSSD_API grssd_status grssd_code_write_matrix(const grssd_code* c, const char* path);
GRSSD_API grssd_status grssd_code_write_characters(const grssd_code* c, const char* path);

typedef struct grssd_verify_options {
    int matrix_method; /* -1 automatic, 0 off, 1 on */
    int mds;           /* 0 off, 1 on */
    uint64_t samples;
    uint64_t seed;
    uint32_t threads;
} grssd_verify_options;

GRSSD_API void grssd_verify_options_init(grssd_verify_options* o);
/* GRSSD_E_MALFORMED for unreadable or tampered files, GRSSD_E_VERIFICATION for failed checks;
   the report is produced whenever the file parsed */
GRSSD_API grssd_status grssd_verify_matrix_file(const char* path, const grssd_verify_options* o, char** report);
/* re-reads an evaluation-set file and re-derives it from its parameters */
GRSSD_API grssd_status grssd_check_set_file(const char* path, char** report);

typedef void (*grssd_progress_fn)(const char* message, void* user);

typedef struct grssd_census_options {
    uint32_t class_mask; /* bit c-1 selects class c */
    uint32_t threads;
    int class2_constructive;
    int class5_table_variant;
    uint64_t budget;
    grssd_progress_fn progress;
    void* user;
} grssd_census_options;

GRSSD_API void grssd_census_options_init(grssd_census_options* o);
GRSSD_API grssd_status grssd_census_run(uint64_t r, const grssd_census_options* o, grssd_census** out);
GRSSD_API grssd_status grssd_census_import(const char* path, grssd_census** out);
GRSSD_API void grssd_census_destroy(grssd_census* c);
GRSSD_API uint64_t grssd_census_count(const grssd_census* c);
GRSSD_API double grssd_census_ratio(const grssd_census* c);
GRSSD_API uint64_t grssd_census_class_count(const grssd_census* c, int class_id);
GRSSD_API int grssd_census_has_length(const grssd_census* c, uint64_t length);
GRSSD_API grssd_status grssd_census_csv(const grssd_census* c, char** out);
GRSSD_API grssd_status grssd_census_write_csv(const grssd_census* c, const char* path);
GRSSD_API grssd_status grssd_census_summary_json(const grssd_census* c, char** out);
/* builds and verifies sampled lengths end to end; GRSSD_E_VERIFICATION if any fails */
GRSSD_API grssd_status grssd_census_spot_verify(const grssd_census* c, uint64_t samples, uint64_t seed, uint32_t threads,
                                                uint64_t* passed, uint64_t* total, char** report);

/* property suites on GF(49) and GF(361); GRSSD_E_SELFTEST names the first failing property */
GRSSD_API grssd_status grssd_self_test(uint64_t seed, int inject_sign_error, char** report);

#ifdef __cplusplus
}
#endif

#endif
