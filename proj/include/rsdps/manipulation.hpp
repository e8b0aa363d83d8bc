#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rsdps/core.hpp"

namespace rsdps {

struct ManipulationFlags {
    bool manipulable = false;     // some surplus improves under the true ranking
    bool sd_manipulable = false;  // misreport row differs and sd-dominates the truthful row
    bool ld_manipulable = false;  // misreport row ld-dominates the truthful row

    ManipulationFlags& operator|=(const ManipulationFlags& o) {
        manipulable |= o.manipulable;
        sd_manipulable |= o.sd_manipulable;
        ld_manipulable |= o.ld_manipulable;
        return *this;
    }
    friend bool operator==(const ManipulationFlags&, const ManipulationFlags&) = default;
};

/// Flags for one misreport, judged by the agent's true ranking.
[[nodiscard]] ManipulationFlags classify_misreport(const PreferenceOrder& truth, std::span<const Rational> truthful_row,
                                                   std::span<const Rational> misreport_row);

/// Which misreports are tried for each agent.
struct MisreportScope {
    enum class Kind { Exhaustive, Sampled };
    Kind kind = Kind::Exhaustive;
    std::uint64_t cap = 5040;   // exhaustive: maximum m! per agent
    std::uint64_t budget = 0;   // sampled: misreports drawn per agent (with replacement)
    std::uint64_t seed = 0;     // sampled

    static MisreportScope exhaustive(std::uint64_t cap = 5040) { return {Kind::Exhaustive, cap, 0, 0}; }
    static MisreportScope sampled(std::uint64_t budget, std::uint64_t seed) { return {Kind::Sampled, 0, budget, seed}; }
};

struct ManipulationWitness {
    AgentId agent;
    PreferenceOrder misreport;
    std::vector<Rational> row;  // agent's allocation under the misreport
};

struct AgentManipulation {
    ManipulationFlags flags;
    std::optional<ManipulationWitness> manipulable;
    std::optional<ManipulationWitness> sd_manipulable;
    std::optional<ManipulationWitness> ld_manipulable;
};

struct ManipulationReport {
    std::vector<AgentManipulation> agents;
    ManipulationFlags flags;  // OR over agents
    std::optional<ManipulationWitness> manipulable;
    std::optional<ManipulationWitness> sd_manipulable;
    std::optional<ManipulationWitness> ld_manipulable;
    /// False when misreports were sampled: flags are then lower bounds.
    bool exhaustive = true;
    std::uint64_t misreports_evaluated = 0;
};

/// Searches each agent's misreports under PS.
///
/// Exhaustive scope scans every alternative ranking in Lehmer-code order and
/// records the first witness per flag; each flag stops searching once found.
/// Sampled scope draws `budget` uniform alternative rankings per agent.
[[nodiscard]] ManipulationReport ps_manipulability(const Profile& profile,
                                                   const MisreportScope& scope = MisreportScope::exhaustive());

/// True when no agent can obtain, by any misreport, an RSD row that her
/// truthful row fails to weakly sd-dominate. False indicates a bug.
[[nodiscard]] bool rsd_strategyproofness_audit(const Profile& profile, std::uint64_t cap = 5040);

}  // namespace rsdps
