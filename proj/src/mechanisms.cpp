#include "rsdps/mechanisms.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace rsdps {

namespace {

void check_prefs(std::span<const PreferenceOrder> prefs, std::size_t m) {
    if (prefs.empty() || m == 0) throw std::invalid_argument("need n >= 1 and m >= 1");
    for (const auto& p : prefs) {
        if (p.size() != m) throw DimensionError("ranking length differs from m");
    }
}

// Number of objects the dictator at `position` takes, given n agents, m objects.
std::size_t picks_at(std::size_t position, std::size_t n, std::size_t m) {
    if (position == 0 && n < m) return m - n + 1;
    return position < m ? 1 : 0;
}

}  // namespace

AssignmentMatrix serial_dictatorship(const Profile& profile, const PriorityOrdering& ordering) {
    const std::size_t n = profile.n();
    const std::size_t m = profile.m();
    if (ordering.size() != n) throw std::invalid_argument("priority ordering does not cover every agent");

    AssignmentMatrix out(n, m);
    std::vector<bool> taken(m, false);
    std::size_t remaining = m;
    for (std::size_t pos = 0; pos < n && remaining > 0; ++pos) {
        const AgentId agent = ordering[pos];
        std::size_t quota = picks_at(pos, n, m);
        for (auto obj : profile.pref(agent).ranking()) {
            if (quota == 0) break;
            if (taken[obj.index]) continue;
            taken[obj.index] = true;
            out.at(agent.index, obj.index) = 1;
            --quota;
            --remaining;
        }
    }
    return out;
}

AssignmentMatrix rsd(const Profile& profile, std::size_t max_agents) { return rsd(profile.prefs(), profile.m(), max_agents); }

AssignmentMatrix rsd(std::span<const PreferenceOrder> prefs, std::size_t m, std::size_t max_agents) {
    check_prefs(prefs, m);
    const std::size_t n = prefs.size();
    if (n > max_agents) {
        throw CapExceeded("RSD over " + std::to_string(n) + " agents exceeds the limit of " + std::to_string(max_agents));
    }
    if (n > 32 || m > 32) throw CapExceeded("RSD supports at most 32 agents and 32 objects");

    using Mask = std::uint32_t;
    auto full = [](std::size_t k) -> Mask { return k == 32 ? ~Mask{0} : (Mask{1} << k) - 1; };
    auto key = [](Mask agents, Mask objects) { return (std::uint64_t{agents} << 32) | objects; };

    AssignmentMatrix out(n, m);
    std::unordered_map<std::uint64_t, Rational> layer{{key(full(n), full(m)), Rational(1)}};
    std::unordered_map<std::uint64_t, Rational> next;

    for (std::size_t position = 0; position < n && !layer.empty(); ++position) {
        next.clear();
        const std::size_t quota = picks_at(position, n, m);
        for (const auto& [state, mass] : layer) {
            const auto agents = static_cast<Mask>(state >> 32);
            const auto objects = static_cast<Mask>(state);
            const Rational share = mass / Rational(std::popcount(agents));
            for (Mask rest = agents; rest != 0; rest &= rest - 1) {
                const auto dictator = static_cast<std::size_t>(std::countr_zero(rest));
                Mask left = objects;
                std::size_t need = quota;
                for (auto obj : prefs[dictator].ranking()) {
                    if (need == 0) break;
                    const Mask bit = Mask{1} << obj.index;
                    if (!(left & bit)) continue;
                    left &= ~bit;
                    out.at(dictator, obj.index) += share;
                    --need;
                }
                const Mask others = agents & ~(Mask{1} << dictator);
                if (others != 0 && left != 0) next[key(others, left)] += share;
            }
        }
        layer.swap(next);
    }
    return out;
}

AssignmentMatrix rsd_bruteforce(const Profile& profile) {
    const std::size_t n = profile.n();
    const std::size_t m = profile.m();
    if (n > kBruteForceMaxAgents) {
        throw CapExceeded("brute-force RSD supports at most " + std::to_string(kBruteForceMaxAgents) + " agents");
    }
    std::vector<std::int64_t> counts(n * m, 0);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::int64_t orderings = 0;
    do {
        std::vector<AgentId> ids;
        for (auto i : order) ids.emplace_back(i);
        const AssignmentMatrix sd = serial_dictatorship(profile, PriorityOrdering(std::move(ids)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (!sd.at(i, j).is_zero()) ++counts[i * m + j];
            }
        }
        ++orderings;
    } while (std::next_permutation(order.begin(), order.end()));

    AssignmentMatrix out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) out.at(i, j) = Rational(counts[i * m + j], orderings);
    }
    return out;
}

AssignmentMatrix ps(const Profile& profile) { return ps(profile.prefs(), profile.m()); }

AssignmentMatrix ps(std::span<const PreferenceOrder> prefs, std::size_t m) {
    check_prefs(prefs, m);
    const std::size_t n = prefs.size();

    AssignmentMatrix out(n, m);
    std::vector<Rational> remaining(m, Rational(1));
    std::vector<bool> alive(m, true);
    std::vector<std::size_t> cursor(n, 0);  // position in each agent's ranking
    std::vector<std::size_t> eaters(m, 0);
    std::vector<std::size_t> eating(n, 0);  // object index
    std::size_t alive_count = m;
    Rational clock;

    while (alive_count > 0) {
        std::fill(eaters.begin(), eaters.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            while (cursor[i] < m && !alive[prefs[i][cursor[i]].index]) ++cursor[i];
            // Every agent ranks every object, so nobody runs dry while objects remain.
            assert(cursor[i] < m);
            eating[i] = prefs[i][cursor[i]].index;
            ++eaters[eating[i]];
        }

        Rational step;
        bool have_step = false;
        for (std::size_t j = 0; j < m; ++j) {
            if (!alive[j] || eaters[j] == 0) continue;
            Rational t = remaining[j] / Rational(static_cast<std::int64_t>(eaters[j]));
            if (!have_step || t < step) {
                step = std::move(t);
                have_step = true;
            }
        }
        assert(have_step);

        for (std::size_t i = 0; i < n; ++i) out.at(i, eating[i]) += step;
        for (std::size_t j = 0; j < m; ++j) {
            if (!alive[j] || eaters[j] == 0) continue;
            remaining[j] -= step * Rational(static_cast<std::int64_t>(eaters[j]));
            if (remaining[j].is_zero()) {
                alive[j] = false;
                --alive_count;
            }
        }
        clock += step;
    }
    if (clock != Rational(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n))) {
        throw std::logic_error("eating did not end at time m/n");
    }
    return out;
}

}  // namespace rsdps
