#include "rsdps/manipulation.hpp"

#include "rsdps/dominance.hpp"
#include "rsdps/mechanisms.hpp"

namespace rsdps {

namespace {

void require_exhaustive_size(std::size_t m, std::uint64_t cap) {
    std::uint64_t perms = 0;
    try {
        perms = factorial(m);
    } catch (const CapExceeded&) {
        perms = ~std::uint64_t{0};
    }
    if (perms > cap) {
        throw CapExceeded(std::to_string(m) + "! misreports per agent exceed the cap of " + std::to_string(cap) +
                          "; use a sampled misreport scope");
    }
}

std::vector<Rational> copy_row(std::span<const Rational> row) { return {row.begin(), row.end()}; }

}  // namespace

ManipulationFlags classify_misreport(const PreferenceOrder& truth, std::span<const Rational> truthful_row,
                                     std::span<const Rational> misreport_row) {
    if (truthful_row.size() != misreport_row.size() || truthful_row.size() != truth.size()) {
        throw DimensionError("rows and ranking differ in length");
    }
    ManipulationFlags flags;
    const auto sd = sd_compare(truth, misreport_row, truthful_row);
    flags.manipulable = sd == DominanceVerdict::FirstDominates || sd == DominanceVerdict::Incomparable;
    flags.sd_manipulable = sd == DominanceVerdict::FirstDominates;
    flags.ld_manipulable = ld_compare(truth, misreport_row, truthful_row) == DominanceVerdict::FirstDominates;
    return flags;
}

ManipulationReport ps_manipulability(const Profile& profile, const MisreportScope& scope) {
    const std::size_t n = profile.n();
    const std::size_t m = profile.m();
    if (scope.kind == MisreportScope::Kind::Exhaustive) require_exhaustive_size(m, scope.cap);

    ManipulationReport report;
    report.exhaustive = scope.kind == MisreportScope::Kind::Exhaustive;
    report.agents.resize(n);

    const AssignmentMatrix truthful = ps(profile);
    std::vector<PreferenceOrder> reported(profile.prefs().begin(), profile.prefs().end());
    const std::uint64_t perms = factorial(m);

    for (std::size_t i = 0; i < n; ++i) {
        const PreferenceOrder& truth = profile.pref(i);
        const std::uint64_t truth_index = permutation_index(truth);
        auto& agent = report.agents[i];
        Rng rng(derive_seed(scope.seed, {i}));

        const std::uint64_t trials = report.exhaustive ? perms : (perms > 1 ? scope.budget : 0);
        for (std::uint64_t t = 0; t < trials; ++t) {
            if (agent.flags.manipulable && agent.flags.sd_manipulable && agent.flags.ld_manipulable) break;
            std::uint64_t index;
            if (report.exhaustive) {
                index = t;
                if (index == truth_index) continue;
            } else {
                index = uniform_below(rng, perms - 1);
                if (index >= truth_index) ++index;
            }
            reported[i] = nth_permutation(m, index);
            const AssignmentMatrix lied = ps(reported, m);
            ++report.misreports_evaluated;
            const auto flags = classify_misreport(truth, truthful.row(i), lied.row(i));

            auto record = [&](bool found, bool& flag, std::optional<ManipulationWitness>& slot) {
                if (found && !flag) {
                    flag = true;
                    slot = ManipulationWitness{AgentId(i), reported[i], copy_row(lied.row(i))};
                }
            };
            record(flags.manipulable, agent.flags.manipulable, agent.manipulable);
            record(flags.sd_manipulable, agent.flags.sd_manipulable, agent.sd_manipulable);
            record(flags.ld_manipulable, agent.flags.ld_manipulable, agent.ld_manipulable);
        }
        reported[i] = truth;

        report.flags |= agent.flags;
        if (!report.manipulable && agent.manipulable) report.manipulable = agent.manipulable;
        if (!report.sd_manipulable && agent.sd_manipulable) report.sd_manipulable = agent.sd_manipulable;
        if (!report.ld_manipulable && agent.ld_manipulable) report.ld_manipulable = agent.ld_manipulable;
    }
    return report;
}

bool rsd_strategyproofness_audit(const Profile& profile, std::uint64_t cap) {
    const std::size_t m = profile.m();
    require_exhaustive_size(m, cap);
    const AssignmentMatrix truthful = rsd(profile);
    std::vector<PreferenceOrder> reported(profile.prefs().begin(), profile.prefs().end());
    const std::uint64_t perms = factorial(m);
    for (std::size_t i = 0; i < profile.n(); ++i) {
        const PreferenceOrder& truth = profile.pref(i);
        for (std::uint64_t index = 0; index < perms; ++index) {
            reported[i] = nth_permutation(m, index);
            if (reported[i] == truth) continue;
            const AssignmentMatrix lied = rsd(reported, m);
            const auto v = sd_compare(truth, truthful.row(i), lied.row(i));
            if (v != DominanceVerdict::FirstDominates && v != DominanceVerdict::Equal) return false;
        }
        reported[i] = truth;
    }
    return true;
}

}  // namespace rsdps
