#pragma once

#include "animat/brain.hpp"
#include "animat/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace animat {

enum class CellKind : std::uint8_t { open, wall, gate };
enum class Room : std::uint8_t { a, b };
enum class Heading : std::uint8_t { up, down, left, right };

char heading_to_char(Heading h);

struct Pose {
    int x = 0;
    int y = 0;
    Heading heading = Heading::up;

    bool operator==(const Pose&) const = default;
};

struct MotorTuple {
    std::uint8_t left = 0;
    std::uint8_t right = 0;
};

// Two rooms connected only by a gate; 72 start positions.
struct Environment {
    int width = 0;
    int height = 0;
    std::vector<CellKind> cells;               // row-major
    std::vector<std::optional<Room>> rooms;    // labels for open cells
    std::vector<Pose> start_positions;         // heading field unused here

    CellKind cell(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
    std::optional<Room> room(int x, int y) const {
        return rooms[static_cast<std::size_t>(y) * width + x];
    }
    bool is_wall(int x, int y) const {
        return x < 0 || y < 0 || x >= width || y >= height || cell(x, y) == CellKind::wall;
    }
    // FNV-1a over the serialized map; used to detect mixed-environment logs.
    std::uint64_t signature() const;
};

struct StepEvents {
    std::vector<std::uint8_t> wall_sensed;   // pre-move sensor values
    std::vector<std::uint8_t> animat_sensed;
    std::vector<std::uint8_t> collided;
    std::vector<std::uint8_t> crossed;
};

// Mutable per-trial state for a clone swarm.
struct SwarmState {
    std::vector<Pose> poses;
    std::vector<BrainState> brains;
    std::vector<Room> last_room;       // last labeled room visited, per animat
    const std::vector<DeterministicGate>* gates = nullptr;
};

// 32x32, horizontal dividing wall with a 2-cell gate, 36 symmetric start
// positions per room.
Environment default_environment();

// Map characters: '#' wall, '.' open in room A, ',' open in room B,
// 'G' gate, 'S'/'s' start position in A/B.
Environment load_environment(const std::string& text_map);
std::string serialize_environment(const Environment& env);

// Front-cell sensing for animat a: (wall ahead, other animat ahead).
std::pair<std::uint8_t, std::uint8_t> sense(const Environment& env,
                                            const std::vector<Pose>& poses, std::size_t a);

// (0,0) stay; (1,0) turn left; (0,1) turn right; (1,1) forward unless blocked.
Pose apply_action(const Environment& env, const Pose& pose, MotorTuple m);

// Synchronous update: sense all, step all brains, move all, then detect
// collisions and gate crossings.
StepEvents step_swarm(const Environment& env, SwarmState& state);

// Random non-overlapping placement on the start positions, random headings.
SwarmState init_swarm(const Environment& env, const std::vector<DeterministicGate>& gates,
                      std::size_t n, Rng& rng);

} // namespace animat
