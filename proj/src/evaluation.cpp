#include "animat/evaluation.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace animat {

TrialLog run_trial(const std::vector<DeterministicGate>& gates, const Environment& env,
                   const TrialConfig& cfg, Rng& rng) {
    SwarmState state = init_swarm(env, gates, cfg.swarm_size, rng);
    TrialLog log;
    log.env_signature = env.signature();
    log.env_width = static_cast<std::uint32_t>(env.width);
    log.env_height = static_cast<std::uint32_t>(env.height);
    log.swarm_size = cfg.swarm_size;
    log.steps = cfg.steps;
    log.rows.reserve(static_cast<std::size_t>(cfg.steps) * cfg.swarm_size);
    for (std::uint32_t t = 0; t < cfg.steps; ++t) {
        const StepEvents events = step_swarm(env, state);
        for (std::uint32_t a = 0; a < cfg.swarm_size; ++a) {
            StepRecord r;
            r.step = static_cast<std::uint16_t>(t);
            r.animat = static_cast<std::uint16_t>(a);
            r.x = static_cast<std::uint8_t>(state.poses[a].x);
            r.y = static_cast<std::uint8_t>(state.poses[a].y);
            r.heading = state.poses[a].heading;
            r.wall_bit = events.wall_sensed[a];
            r.animat_bit = events.animat_sensed[a];
            r.motor_left = state.brains[a].bits[kLeftMotor];
            r.motor_right = state.brains[a].bits[kRightMotor];
            r.collided = events.collided[a];
            r.crossed = events.crossed[a];
            log.rows.push_back(r);
        }
    }
    return log;
}

double animat_fitness(const TrialLog& log, std::uint32_t animat, const TrialConfig& cfg) {
    if (log.steps < cfg.steps || log.rows.size() <
        static_cast<std::size_t>(log.steps) * log.swarm_size) {
        throw std::runtime_error("malformed trial log: expected " + std::to_string(cfg.steps) +
                                 " steps, got " + std::to_string(log.steps));
    }
    double fitness = 0.0;
    std::int64_t last_cross = -static_cast<std::int64_t>(cfg.timeout) - 1;
    for (std::uint32_t t = 0; t < cfg.steps; ++t) {
        const StepRecord& r = log.row(t, animat);
        if (r.crossed) {
            if (last_cross < static_cast<std::int64_t>(t) - static_cast<std::int64_t>(cfg.timeout))
                fitness += cfg.reward;
            last_cross = t;
        }
        if (r.collided) fitness -= cfg.penalty;
    }
    return fitness;
}

namespace {

// Same accounting as animat_fitness, without materializing a log.
struct FitnessAccumulator {
    std::int64_t last_cross;
    double fitness = 0.0;

    explicit FitnessAccumulator(std::uint32_t timeout)
        : last_cross(-static_cast<std::int64_t>(timeout) - 1) {}

    void step(std::uint32_t t, bool crossed, bool collided, const TrialConfig& cfg) {
        if (crossed) {
            if (last_cross < static_cast<std::int64_t>(t) - static_cast<std::int64_t>(cfg.timeout))
                fitness += cfg.reward;
            last_cross = t;
        }
        if (collided) fitness -= cfg.penalty;
    }
};

} // namespace

FitnessReport gates_fitness(const std::vector<DeterministicGate>& gates, const Environment& env,
                            const TrialConfig& cfg, std::uint64_t seed) {
    FitnessReport report;
    report.tracked_animat.resize(cfg.trials);
    report.trial_fitness.resize(cfg.trials);
    for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(seed, trial));
        SwarmState state = init_swarm(env, gates, cfg.swarm_size, rng);
        const std::uint32_t tracked = rng.uniform_u32(cfg.swarm_size);
        FitnessAccumulator acc(cfg.timeout);
        for (std::uint32_t t = 0; t < cfg.steps; ++t) {
            const StepEvents events = step_swarm(env, state);
            acc.step(t, events.crossed[tracked], events.collided[tracked], cfg);
        }
        report.tracked_animat[trial] = tracked;
        report.trial_fitness[trial] = acc.fitness;
    }
    double sum = 0.0;
    for (double f : report.trial_fitness) sum += f;
    report.mean = cfg.trials ? sum / cfg.trials : 0.0;
    return report;
}

FitnessReport genome_fitness(const Genome& g, const Environment& env, const TrialConfig& cfg,
                             std::uint64_t seed) {
    return gates_fitness(decode_gates(g), env, cfg, seed);
}

std::string trial_log_to_csv(const TrialLog& log) {
    std::ostringstream out;
    out << "# env=" << std::hex << log.env_signature << std::dec << " width=" << log.env_width
        << " height=" << log.env_height << " swarm_size=" << log.swarm_size
        << " steps=" << log.steps << '\n';
    out << "step,animat_id,x,y,heading,wall_bit,animat_bit,m_l,m_r,collided,crossed\n";
    for (const auto& r : log.rows) {
        out << r.step << ',' << r.animat << ',' << int(r.x) << ',' << int(r.y) << ','
            << heading_to_char(r.heading) << ',' << int(r.wall_bit) << ',' << int(r.animat_bit)
            << ',' << int(r.motor_left) << ',' << int(r.motor_right) << ',' << int(r.collided)
            << ',' << int(r.crossed) << '\n';
    }
    return out.str();
}

TrialLog trial_log_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    TrialLog log;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string token;
            while (meta >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = token.substr(0, eq);
                const std::string value = token.substr(eq + 1);
                if (key == "env") log.env_signature = std::stoull(value, nullptr, 16);
                else if (key == "width") log.env_width = std::stoul(value);
                else if (key == "height") log.env_height = std::stoul(value);
                else if (key == "swarm_size") log.swarm_size = std::stoul(value);
                else if (key == "steps") log.steps = std::stoul(value);
            }
            continue;
        }
        if (!header_seen) { // column header
            header_seen = true;
            continue;
        }
        StepRecord r;
        std::istringstream row(line);
        std::string field;
        int col = 0;
        while (std::getline(row, field, ',')) {
            switch (col++) {
            case 0: r.step = static_cast<std::uint16_t>(std::stoul(field)); break;
            case 1: r.animat = static_cast<std::uint16_t>(std::stoul(field)); break;
            case 2: r.x = static_cast<std::uint8_t>(std::stoul(field)); break;
            case 3: r.y = static_cast<std::uint8_t>(std::stoul(field)); break;
            case 4:
                switch (field.empty() ? '?' : field[0]) {
                case 'U': r.heading = Heading::up; break;
                case 'D': r.heading = Heading::down; break;
                case 'L': r.heading = Heading::left; break;
                case 'R': r.heading = Heading::right; break;
                default: throw std::runtime_error("bad heading field: " + field);
                }
                break;
            case 5: r.wall_bit = field == "1"; break;
            case 6: r.animat_bit = field == "1"; break;
            case 7: r.motor_left = field == "1"; break;
            case 8: r.motor_right = field == "1"; break;
            case 9: r.collided = field == "1"; break;
            case 10: r.crossed = field == "1"; break;
            default: throw std::runtime_error("too many fields in log row");
            }
        }
        if (col != 11) throw std::runtime_error("expected 11 fields in log row, got " +
                                                std::to_string(col));
        log.rows.push_back(r);
    }
    return log;
}

} // namespace animat
