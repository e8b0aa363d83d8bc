#pragma once

#include <cstddef>
#include <span>

#include "rsdps/core.hpp"

namespace rsdps {

inline constexpr std::size_t kDefaultRsdMaxAgents = 12;
inline constexpr std::size_t kBruteForceMaxAgents = 8;

/// Deterministic serial dictatorship along `ordering`.
///
/// When n < m the first dictator takes her m - n + 1 most preferred objects
/// and every later dictator one; when n > m dictators past position m get
/// nothing.
[[nodiscard]] AssignmentMatrix serial_dictatorship(const Profile& profile, const PriorityOrdering& ordering);

/// Random serial dictatorship: the exact uniform average of
/// serial_dictatorship over all n! priority orderings.
///
/// Evaluated without enumerating orderings. A state is the pair (agents still
/// to pick, objects still available); probability mass flows forward through
/// the reachable states, split evenly over the next dictator, and each pick
/// credits the dictator with the mass arriving at that state.
[[nodiscard]] AssignmentMatrix rsd(const Profile& profile, std::size_t max_agents = kDefaultRsdMaxAgents);
[[nodiscard]] AssignmentMatrix rsd(std::span<const PreferenceOrder> prefs, std::size_t m,
                                   std::size_t max_agents = kDefaultRsdMaxAgents);

/// Literal enumeration of all n! orderings (n <= 8). Test oracle for rsd().
[[nodiscard]] AssignmentMatrix rsd_bruteforce(const Profile& profile);

/// Probabilistic serial: simultaneous eating at unit speed, simulated in
/// exact rational time. Ends at time m/n with every object exhausted.
[[nodiscard]] AssignmentMatrix ps(const Profile& profile);
[[nodiscard]] AssignmentMatrix ps(std::span<const PreferenceOrder> prefs, std::size_t m);

}  // namespace rsdps
