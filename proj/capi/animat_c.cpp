#include "animat_c.h"

#include "animat/runner.hpp"

#include <cstring>
#include <string>
#include <vector>

struct an_config {
    animat::ExperimentConfig cfg;
};

struct an_genome {
    animat::Genome g;
};

namespace {

thread_local std::string g_last_error = "no error";

an_status fail(an_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Maps parse/format wording onto AN_ERR_FORMAT, file wording onto AN_ERR_IO.
an_status classify(const std::exception& e) {
    const std::string what = e.what();
    if (what.find("cannot open") != std::string::npos ||
        what.find("write failed") != std::string::npos ||
        what.find("missing run artifact") != std::string::npos) {
        return fail(AN_ERR_IO, what);
    }
    if (what.find("map error") != std::string::npos ||
        what.find("truncated") != std::string::npos ||
        what.find("hex") != std::string::npos ||
        what.find("expected 72") != std::string::npos ||
        what.find("rooms") != std::string::npos) {
        return fail(AN_ERR_FORMAT, what);
    }
    if (what.find("unknown config key") != std::string::npos ||
        what.find("invalid value") != std::string::npos ||
        what.find("unknown condition") != std::string::npos) {
        return fail(AN_ERR_INVALID_ARGUMENT, what);
    }
    return fail(AN_ERR_RUNTIME, what);
}

template <typename Fn>
an_status guarded(Fn&& fn) {
    try {
        fn();
        return AN_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        return fail(AN_ERR_RUNTIME, "unknown error");
    }
}

an_status require(bool ok, const char* message) {
    return ok ? AN_OK : fail(AN_ERR_INVALID_ARGUMENT, message);
}

} // namespace

extern "C" {

const char* an_version(void) { return animat::kToolVersion; }

const char* an_last_error(void) { return g_last_error.c_str(); }

an_config* an_config_create(void) {
    return new an_config{animat::default_experiment_config()};
}

void an_config_destroy(an_config* cfg) { delete cfg; }

an_status an_config_load(an_config* cfg, const char* path) {
    if (an_status s = require(cfg && path, "null argument")) return s;
    return guarded([&] { cfg->cfg = animat::load_config_file(path); });
}

an_status an_config_set(an_config* cfg, const char* key, const char* value) {
    if (an_status s = require(cfg && key && value, "null argument")) return s;
    return guarded([&] { animat::apply_key_value(cfg->cfg, key, value); });
}

an_status an_config_serialize(const an_config* cfg, char** out_text) {
    if (an_status s = require(cfg && out_text, "null argument")) return s;
    return guarded([&] {
        const std::string text = animat::serialize_config(cfg->cfg);
        *out_text = new char[text.size() + 1];
        std::memcpy(*out_text, text.c_str(), text.size() + 1);
    });
}

void an_string_free(char* text) { delete[] text; }

an_status an_genome_random(const an_config* cfg, uint64_t seed, an_genome** out) {
    if (an_status s = require(cfg && out, "null argument")) return s;
    return guarded([&] {
        animat::Rng rng(seed);
        *out = new an_genome{animat::new_random_genome(cfg->cfg.ga.initial_genome_size,
                                                       cfg->cfg.ga.mutation, rng)};
    });
}

an_status an_genome_load(const char* path, an_genome** out) {
    if (an_status s = require(path && out, "null argument")) return s;
    return guarded([&] { *out = new an_genome{animat::load_genome_any(path)}; });
}

an_status an_genome_save(const an_genome* g, const char* path) {
    if (an_status s = require(g && path, "null argument")) return s;
    return guarded([&] { animat::save_genome_binary(g->g, path); });
}

an_status an_genome_mutate(const an_genome* g, const an_config* cfg, uint64_t seed,
                           an_genome** out) {
    if (an_status s = require(g && cfg && out, "null argument")) return s;
    return guarded([&] {
        animat::Rng rng(seed);
        *out = new an_genome{animat::mutate(g->g, cfg->cfg.ga.mutation, rng)};
    });
}

size_t an_genome_length(const an_genome* g) { return g ? g->g.size() : 0; }

size_t an_genome_gate_count(const an_genome* g) {
    return g ? animat::decode_gates(g->g).size() : 0;
}

void an_genome_destroy(an_genome* g) { delete g; }

an_status an_run_evolve(const an_config* cfg, const char* out_dir) {
    if (an_status s = require(cfg && out_dir, "null argument")) return s;
    return guarded([&] { animat::run_evolve(cfg->cfg, out_dir); });
}

an_status an_evaluate_genome(const an_config* cfg, const char* genome_path,
                             double* out_fitness) {
    if (an_status s = require(cfg && genome_path && out_fitness, "null argument")) return s;
    return guarded([&] {
        const animat::Genome g = animat::load_genome_any(genome_path);
        const animat::Environment env = cfg->cfg.make_environment();
        *out_fitness =
            animat::genome_fitness(g, env, cfg->cfg.ga.trial, cfg->cfg.ga.seed).mean;
    });
}

an_status an_run_sweep(const an_config* cfg, const char* genome_path, const char* out_csv) {
    if (an_status s = require(cfg && genome_path && out_csv, "null argument")) return s;
    return guarded([&] { animat::run_sweep(cfg->cfg, genome_path, out_csv); });
}

an_status an_run_trial(const an_config* cfg, const char* genome_path, const char* out_csv) {
    if (an_status s = require(cfg && genome_path && out_csv, "null argument")) return s;
    return guarded([&] { animat::run_single_trial(cfg->cfg, genome_path, out_csv); });
}

an_status an_run_analyze(const char* const* run_dirs, size_t n_run_dirs, const char* mode,
                         const char* out_dir) {
    if (an_status s = require(run_dirs && mode && out_dir && n_run_dirs > 0,
                              "null argument or empty run dir list")) {
        return s;
    }
    return guarded([&] {
        std::vector<std::string> dirs(run_dirs, run_dirs + n_run_dirs);
        animat::run_analyze(dirs, mode, out_dir);
    });
}

} // extern "C"
