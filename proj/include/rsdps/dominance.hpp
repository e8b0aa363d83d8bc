#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rsdps/core.hpp"

namespace rsdps {

enum class DominanceVerdict { Equal, FirstDominates, SecondDominates, Incomparable };
enum class DominanceMode { Stochastic, Lexicographic };

[[nodiscard]] std::string_view to_string(DominanceVerdict verdict) noexcept;
[[nodiscard]] std::string_view to_string(DominanceMode mode) noexcept;

/// Probability that `row` yields an object weakly preferred to `l` under `pref`.
[[nodiscard]] Rational surplus(const PreferenceOrder& pref, ObjectId l, std::span<const Rational> row);

/// First-order stochastic dominance of two allocation rows under `pref`.
[[nodiscard]] DominanceVerdict sd_compare(const PreferenceOrder& pref, std::span<const Rational> a,
                                          std::span<const Rational> b);

/// Lexicographic comparison: the first object in `pref` order where the rows
/// differ decides. Never Incomparable.
[[nodiscard]] DominanceVerdict ld_compare(const PreferenceOrder& pref, std::span<const Rational> a,
                                          std::span<const Rational> b);

[[nodiscard]] DominanceVerdict compare_rows(DominanceMode mode, const PreferenceOrder& pref, std::span<const Rational> a,
                                            std::span<const Rational> b);

/// Per-agent verdicts of A against B, each under that agent's own ranking.
[[nodiscard]] std::vector<DominanceVerdict> agent_verdicts(const AssignmentMatrix& a, const AssignmentMatrix& b,
                                                           const Profile& profile, DominanceMode mode);

/// Profile-level dominance: A dominates B when the matrices differ and every
/// agent finds her A row at least as good (dominating or equal).
[[nodiscard]] DominanceVerdict profile_dominance(const AssignmentMatrix& a, const AssignmentMatrix& b,
                                                 const Profile& profile, DominanceMode mode);

/// Strict reading: every agent's A row strictly sd-dominates her B row.
[[nodiscard]] bool strictly_sd_dominates(const AssignmentMatrix& a, const AssignmentMatrix& b, const Profile& profile);

struct AgentEnvy {
    bool sd_envyfree = true;
    bool weakly_envious = false;             // some surplus of another row beats her own
    bool ld_envious = false;                 // another row ld-dominates her own
    std::optional<AgentId> weak_target;      // first agent envied (weak sense)
    std::optional<AgentId> ld_target;        // first agent envied lexicographically
};

struct EnvyReport {
    std::vector<AgentEnvy> agents;
    Rational envy_fraction;  // weakly envious agents / n

    [[nodiscard]] std::size_t weakly_envious_count() const;
    [[nodiscard]] std::size_t ld_envious_count() const;
};

[[nodiscard]] EnvyReport envy_report(const AssignmentMatrix& matrix, const Profile& profile);

/// Downward partial symmetry: agents sharing a ranking prefix get equal
/// probabilities on every object of that prefix.
[[nodiscard]] bool dps_check(const AssignmentMatrix& matrix, const Profile& profile);

/// Upward partial symmetry: the same for shared ranking suffixes.
[[nodiscard]] bool ups_check(const AssignmentMatrix& matrix, const Profile& profile);

/// Converse of DPS, as a diagnostic: whenever two agents receive equal
/// probabilities on all of agent i's top-k objects, their top-k prefixes agree.
[[nodiscard]] bool dps_converse_check(const AssignmentMatrix& matrix, const Profile& profile);

}  // namespace rsdps
