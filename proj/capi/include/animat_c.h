#ifndef ANIMAT_C_H
#define ANIMAT_C_H

/* C interface to the animat evolution suite. All functions return an
 * an_status; on failure the human-readable message is available via
 * an_last_error(). Handles are opaque and must be released with their
 * destroy function. The library keeps no global mutable state apart from
 * the per-thread error message. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum an_status {
    AN_OK = 0,
    AN_ERR_INVALID_ARGUMENT = 1, /* bad parameter or config key/value */
    AN_ERR_IO = 2,               /* file missing, unreadable, unwritable */
    AN_ERR_FORMAT = 3,           /* map/genome/log parse failure */
    AN_ERR_RUNTIME = 4           /* anything else */
} an_status;

typedef struct an_config an_config;
typedef struct an_genome an_genome;

const char* an_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* an_last_error(void);

/* --- configuration ------------------------------------------------- */

/* Fresh config with the standard defaults. */
an_config* an_config_create(void);
void an_config_destroy(an_config* cfg);

/* Line-based key=value file with '#' comments. */
an_status an_config_load(an_config* cfg, const char* path);
an_status an_config_set(an_config* cfg, const char* key, const char* value);

/* Serialized snapshot; caller frees with an_string_free. */
an_status an_config_serialize(const an_config* cfg, char** out_text);
void an_string_free(char* text);

/* --- genomes -------------------------------------------------------- */

an_status an_genome_random(const an_config* cfg, uint64_t seed, an_genome** out);
an_status an_genome_load(const char* path, an_genome** out);
an_status an_genome_save(const an_genome* g, const char* path);
an_status an_genome_mutate(const an_genome* g, const an_config* cfg, uint64_t seed,
                           an_genome** out);
size_t an_genome_length(const an_genome* g);
size_t an_genome_gate_count(const an_genome* g);
void an_genome_destroy(an_genome* g);

/* --- experiment entry points ---------------------------------------- */

/* Full evolution run (all replicates) into out_dir. */
an_status an_run_evolve(const an_config* cfg, const char* out_dir);

/* Mean fitness of a persisted genome under the configured trial settings;
 * result written to *out_fitness. */
an_status an_evaluate_genome(const an_config* cfg, const char* genome_path,
                             double* out_fitness);

/* 21-size generalizability sweep; CSV plus AUC footer. */
an_status an_run_sweep(const an_config* cfg, const char* genome_path, const char* out_csv);

/* Single debug trial with a full per-step CSV log. */
an_status an_run_trial(const an_config* cfg, const char* genome_path, const char* out_csv);

/* Post-hoc analysis over completed run directories.
 * mode: "heatmap", "states", "tpm", "graph", or "stats". */
an_status an_run_analyze(const char* const* run_dirs, size_t n_run_dirs, const char* mode,
                         const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* ANIMAT_C_H */
