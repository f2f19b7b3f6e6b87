#include "animat/world.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace animat {

char heading_to_char(Heading h) {
    switch (h) {
    case Heading::up: return 'U';
    case Heading::down: return 'D';
    case Heading::left: return 'L';
    case Heading::right: return 'R';
    }
    return '?';
}

namespace {

constexpr int kSize = 32;

std::pair<int, int> forward_delta(Heading h) {
    switch (h) {
    case Heading::up: return {0, -1};
    case Heading::down: return {0, 1};
    case Heading::left: return {-1, 0};
    case Heading::right: return {1, 0};
    }
    return {0, 0};
}

Heading rotate_left(Heading h) {
    switch (h) {
    case Heading::up: return Heading::left;
    case Heading::left: return Heading::down;
    case Heading::down: return Heading::right;
    case Heading::right: return Heading::up;
    }
    return h;
}

Heading rotate_right(Heading h) {
    switch (h) {
    case Heading::up: return Heading::right;
    case Heading::right: return Heading::down;
    case Heading::down: return Heading::left;
    case Heading::left: return Heading::up;
    }
    return h;
}

[[noreturn]] void parse_error(int line, int col, const std::string& what) {
    throw std::runtime_error("map error at line " + std::to_string(line + 1) + ", column " +
                             std::to_string(col + 1) + ": " + what);
}

void validate(const Environment& env) {
    if (env.start_positions.size() != 72) {
        throw std::runtime_error("expected 72 start positions, got " +
                                 std::to_string(env.start_positions.size()));
    }
    // Border must be wall.
    for (int x = 0; x < env.width; ++x) {
        if (env.cell(x, 0) != CellKind::wall || env.cell(x, env.height - 1) != CellKind::wall)
            throw std::runtime_error("map border is not closed");
    }
    for (int y = 0; y < env.height; ++y) {
        if (env.cell(0, y) != CellKind::wall || env.cell(env.width - 1, y) != CellKind::wall)
            throw std::runtime_error("map border is not closed");
    }

    // Flood fill over open cells with gates blocked: no component may hold
    // both room labels, and each room must be a single component.
    const std::size_t total = static_cast<std::size_t>(env.width) * env.height;
    std::vector<int> component(total, -1);
    int n_components = 0;
    std::vector<int> comp_of_room(2, -1);
    for (std::size_t s = 0; s < total; ++s) {
        if (env.cells[s] != CellKind::open || component[s] >= 0) continue;
        const int id = n_components++;
        std::vector<std::size_t> stack{s};
        component[s] = id;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const int x = static_cast<int>(cur % env.width);
            const int y = static_cast<int>(cur / env.width);
            const int dx[] = {1, -1, 0, 0};
            const int dy[] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int nx = x + dx[k];
                const int ny = y + dy[k];
                if (env.is_wall(nx, ny) || env.cell(nx, ny) != CellKind::open) continue;
                const std::size_t idx = static_cast<std::size_t>(ny) * env.width + nx;
                if (component[idx] < 0) {
                    component[idx] = id;
                    stack.push_back(idx);
                }
            }
            const int room_idx = env.rooms[cur] == Room::a ? 0 : 1;
            if (comp_of_room[room_idx] == -1) comp_of_room[room_idx] = id;
            if (comp_of_room[1 - room_idx] == id)
                throw std::runtime_error("rooms connected without gate");
            if (comp_of_room[room_idx] != id)
                throw std::runtime_error(std::string("room ") + (room_idx == 0 ? "A" : "B") +
                                         " is not connected");
        }
    }
    for (const auto& p : env.start_positions) {
        if (env.cell(p.x, p.y) != CellKind::open)
            throw std::runtime_error("start position on non-open cell");
    }
}

} // namespace

Environment default_environment() {
    std::ostringstream map;
    const int gate_left = kSize / 2 - 1; // 2-cell gate at the wall's center
    const int wall_row = kSize / 2 - 1;
    const std::vector<int> start_cols = {4, 8, 12, 19, 23, 27};
    const std::vector<int> start_rows_a = {3, 5, 7, 9, 11, 13};
    for (int y = 0; y < kSize; ++y) {
        for (int x = 0; x < kSize; ++x) {
            char c;
            if (x == 0 || y == 0 || x == kSize - 1 || y == kSize - 1) {
                c = '#';
            } else if (y == wall_row) {
                c = (x == gate_left || x == gate_left + 1) ? 'G' : '#';
            } else if (y < wall_row) {
                const bool start = std::count(start_cols.begin(), start_cols.end(), x) &&
                                   std::count(start_rows_a.begin(), start_rows_a.end(), y);
                c = start ? 'S' : '.';
            } else {
                const int mirrored = kSize - 1 - y;
                const bool start = std::count(start_cols.begin(), start_cols.end(), x) &&
                                   std::count(start_rows_a.begin(), start_rows_a.end(), mirrored);
                c = start ? 's' : ',';
            }
            map << c;
        }
        map << '\n';
    }
    return load_environment(map.str());
}

Environment load_environment(const std::string& text_map) {
    std::vector<std::string> lines;
    {
        std::istringstream in(text_map);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(line);
        }
    }
    if (lines.empty()) throw std::runtime_error("empty map");
    Environment env;
    env.height = static_cast<int>(lines.size());
    env.width = static_cast<int>(lines[0].size());
    env.cells.assign(static_cast<std::size_t>(env.width) * env.height, CellKind::wall);
    env.rooms.assign(env.cells.size(), std::nullopt);
    for (int y = 0; y < env.height; ++y) {
        if (static_cast<int>(lines[y].size()) != env.width)
            parse_error(y, static_cast<int>(lines[y].size()), "map is not rectangular");
        for (int x = 0; x < env.width; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * env.width + x;
            switch (lines[y][x]) {
            case '#': env.cells[idx] = CellKind::wall; break;
            case 'G': env.cells[idx] = CellKind::gate; break;
            case 'S':
                env.start_positions.push_back({x, y, Heading::up});
                [[fallthrough]];
            case '.':
                env.cells[idx] = CellKind::open;
                env.rooms[idx] = Room::a;
                break;
            case 's':
                env.start_positions.push_back({x, y, Heading::up});
                [[fallthrough]];
            case ',':
                env.cells[idx] = CellKind::open;
                env.rooms[idx] = Room::b;
                break;
            default: parse_error(y, x, std::string("unknown cell character '") + lines[y][x] + "'");
            }
        }
    }
    validate(env);
    return env;
}

std::string serialize_environment(const Environment& env) {
    std::string out;
    out.reserve(static_cast<std::size_t>(env.height) * (env.width + 1));
    for (int y = 0; y < env.height; ++y) {
        for (int x = 0; x < env.width; ++x) {
            const bool start =
                std::any_of(env.start_positions.begin(), env.start_positions.end(),
                            [&](const Pose& p) { return p.x == x && p.y == y; });
            char c = '#';
            switch (env.cell(x, y)) {
            case CellKind::wall: c = '#'; break;
            case CellKind::gate: c = 'G'; break;
            case CellKind::open:
                if (env.room(x, y) == Room::a)
                    c = start ? 'S' : '.';
                else
                    c = start ? 's' : ',';
                break;
            }
            out.push_back(c);
        }
        out.push_back('\n');
    }
    return out;
}

std::uint64_t Environment::signature() const {
    const std::string s = serialize_environment(*this);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::pair<std::uint8_t, std::uint8_t> sense(const Environment& env,
                                            const std::vector<Pose>& poses, std::size_t a) {
    const auto [dx, dy] = forward_delta(poses[a].heading);
    const int fx = poses[a].x + dx;
    const int fy = poses[a].y + dy;
    if (env.is_wall(fx, fy)) return {1, 0};
    std::uint8_t occupied = 0;
    for (std::size_t i = 0; i < poses.size(); ++i) {
        if (i != a && poses[i].x == fx && poses[i].y == fy) {
            occupied = 1;
            break;
        }
    }
    return {0, occupied};
}

Pose apply_action(const Environment& env, const Pose& pose, MotorTuple m) {
    Pose out = pose;
    if (m.left && !m.right) {
        out.heading = rotate_left(out.heading);
    } else if (!m.left && m.right) {
        out.heading = rotate_right(out.heading);
    } else if (m.left && m.right) {
        const auto [dx, dy] = forward_delta(out.heading);
        if (!env.is_wall(out.x + dx, out.y + dy)) {
            out.x += dx;
            out.y += dy;
        }
    }
    return out;
}

StepEvents step_swarm(const Environment& env, SwarmState& state) {
    const std::size_t n = state.poses.size();
    StepEvents events;
    events.wall_sensed.assign(n, 0);
    events.animat_sensed.assign(n, 0);
    events.collided.assign(n, 0);
    events.crossed.assign(n, 0);

    // Phase 1: everyone senses the pre-move configuration.
    std::vector<std::uint16_t> occupancy(static_cast<std::size_t>(env.width) * env.height, 0);
    for (const auto& p : state.poses)
        ++occupancy[static_cast<std::size_t>(p.y) * env.width + p.x];
    for (std::size_t a = 0; a < n; ++a) {
        const auto [dx, dy] = forward_delta(state.poses[a].heading);
        const int fx = state.poses[a].x + dx;
        const int fy = state.poses[a].y + dy;
        std::uint8_t wall_bit = 0, animat_bit = 0;
        if (env.is_wall(fx, fy)) {
            wall_bit = 1;
        } else if (occupancy[static_cast<std::size_t>(fy) * env.width + fx] > 0) {
            animat_bit = 1;
        }
        state.brains[a].bits[kWallSensor] = wall_bit;
        state.brains[a].bits[kAnimatSensor] = animat_bit;
        events.wall_sensed[a] = wall_bit;
        events.animat_sensed[a] = animat_bit;
    }

    // Phase 2 + 3: brains update, actions apply simultaneously.
    std::fill(occupancy.begin(), occupancy.end(), 0);
    for (std::size_t a = 0; a < n; ++a) {
        state.brains[a] = brain_step(state.brains[a], *state.gates);
        const MotorTuple m{state.brains[a].bits[kLeftMotor], state.brains[a].bits[kRightMotor]};
        state.poses[a] = apply_action(env, state.poses[a], m);
        ++occupancy[static_cast<std::size_t>(state.poses[a].y) * env.width + state.poses[a].x];
    }

    // Phase 4: collision and crossing events on post-move cells.
    for (std::size_t a = 0; a < n; ++a) {
        const auto& p = state.poses[a];
        events.collided[a] =
            occupancy[static_cast<std::size_t>(p.y) * env.width + p.x] > 1 ? 1 : 0;
        if (const auto room = env.room(p.x, p.y)) {
            if (*room != state.last_room[a]) events.crossed[a] = 1;
            state.last_room[a] = *room;
        }
    }
    return events;
}

SwarmState init_swarm(const Environment& env, const std::vector<DeterministicGate>& gates,
                      std::size_t n, Rng& rng) {
    if (n > env.start_positions.size()) {
        throw std::runtime_error("swarm exceeds start positions (" + std::to_string(n) + " > " +
                                 std::to_string(env.start_positions.size()) + ")");
    }
    if (n == 0) throw std::runtime_error("swarm size must be positive");
    std::vector<Pose> slots = env.start_positions;
    SwarmState state;
    state.gates = &gates;
    state.poses.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + rng.uniform_u32(static_cast<std::uint32_t>(slots.size() - i));
        std::swap(slots[i], slots[j]);
        Pose p = slots[i];
        p.heading = static_cast<Heading>(rng.uniform_u32(4));
        state.poses.push_back(p);
    }
    state.brains.assign(n, BrainState{});
    state.last_room.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto room = env.room(state.poses[a].x, state.poses[a].y);
        state.last_room[a] = room.value_or(Room::a);
    }
    return state;
}

} // namespace animat
