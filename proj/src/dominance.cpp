#include "rsdps/dominance.hpp"

namespace rsdps {

namespace {

void check_row_sizes(const PreferenceOrder& pref, std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size() || a.size() != pref.size()) throw DimensionError("rows and ranking differ in length");
}

void check_matrix(const AssignmentMatrix& matrix, const Profile& profile) {
    if (matrix.n() != profile.n() || matrix.m() != profile.m()) throw DimensionError("matrix does not match profile");
}

// Length of the longest common prefix of two rankings.
std::size_t common_prefix(const PreferenceOrder& x, const PreferenceOrder& y) {
    std::size_t k = 0;
    while (k < x.size() && x[k] == y[k]) ++k;
    return k;
}

std::size_t common_suffix(const PreferenceOrder& x, const PreferenceOrder& y) {
    const std::size_t m = x.size();
    std::size_t k = 0;
    while (k < m && x[m - 1 - k] == y[m - 1 - k]) ++k;
    return k;
}

}  // namespace

std::string_view to_string(DominanceVerdict verdict) noexcept {
    switch (verdict) {
        case DominanceVerdict::Equal: return "equal";
        case DominanceVerdict::FirstDominates: return "first-dominates";
        case DominanceVerdict::SecondDominates: return "second-dominates";
        case DominanceVerdict::Incomparable: return "incomparable";
    }
    return "?";
}

std::string_view to_string(DominanceMode mode) noexcept {
    return mode == DominanceMode::Stochastic ? "sd" : "ld";
}

Rational surplus(const PreferenceOrder& pref, ObjectId l, std::span<const Rational> row) {
    if (row.size() != pref.size()) throw DimensionError("row and ranking differ in length");
    const std::size_t last = pref.rank(l);
    Rational sum;
    for (std::size_t pos = 0; pos <= last; ++pos) sum += row[pref[pos].index];
    return sum;
}

DominanceVerdict sd_compare(const PreferenceOrder& pref, std::span<const Rational> a, std::span<const Rational> b) {
    check_row_sizes(pref, a, b);
    bool a_ahead = false;  // some prefix where a's surplus is strictly larger
    bool b_ahead = false;
    Rational sa, sb;
    for (std::size_t pos = 0; pos < pref.size(); ++pos) {
        const std::size_t obj = pref[pos].index;
        sa += a[obj];
        sb += b[obj];
        if (sa > sb) a_ahead = true;
        else if (sb > sa) b_ahead = true;
        if (a_ahead && b_ahead) return DominanceVerdict::Incomparable;
    }
    if (a_ahead) return DominanceVerdict::FirstDominates;
    if (b_ahead) return DominanceVerdict::SecondDominates;
    // Equal cumulative sums at every prefix force equal rows.
    return DominanceVerdict::Equal;
}

DominanceVerdict ld_compare(const PreferenceOrder& pref, std::span<const Rational> a, std::span<const Rational> b) {
    check_row_sizes(pref, a, b);
    for (auto obj : pref.ranking()) {
        const auto c = a[obj.index] <=> b[obj.index];
        if (c > 0) return DominanceVerdict::FirstDominates;
        if (c < 0) return DominanceVerdict::SecondDominates;
    }
    return DominanceVerdict::Equal;
}

DominanceVerdict compare_rows(DominanceMode mode, const PreferenceOrder& pref, std::span<const Rational> a,
                              std::span<const Rational> b) {
    return mode == DominanceMode::Stochastic ? sd_compare(pref, a, b) : ld_compare(pref, a, b);
}

std::vector<DominanceVerdict> agent_verdicts(const AssignmentMatrix& a, const AssignmentMatrix& b,
                                             const Profile& profile, DominanceMode mode) {
    check_matrix(a, profile);
    check_matrix(b, profile);
    std::vector<DominanceVerdict> out;
    out.reserve(profile.n());
    for (std::size_t i = 0; i < profile.n(); ++i) out.push_back(compare_rows(mode, profile.pref(i), a.row(i), b.row(i)));
    return out;
}

DominanceVerdict profile_dominance(const AssignmentMatrix& a, const AssignmentMatrix& b, const Profile& profile,
                                   DominanceMode mode) {
    bool a_wins = false;
    bool b_wins = false;
    for (auto v : agent_verdicts(a, b, profile, mode)) {
        switch (v) {
            case DominanceVerdict::Equal: break;
            case DominanceVerdict::FirstDominates: a_wins = true; break;
            case DominanceVerdict::SecondDominates: b_wins = true; break;
            case DominanceVerdict::Incomparable: return DominanceVerdict::Incomparable;
        }
    }
    if (a_wins && b_wins) return DominanceVerdict::Incomparable;
    if (a_wins) return DominanceVerdict::FirstDominates;
    if (b_wins) return DominanceVerdict::SecondDominates;
    return DominanceVerdict::Equal;
}

bool strictly_sd_dominates(const AssignmentMatrix& a, const AssignmentMatrix& b, const Profile& profile) {
    for (auto v : agent_verdicts(a, b, profile, DominanceMode::Stochastic)) {
        if (v != DominanceVerdict::FirstDominates) return false;
    }
    return true;
}

std::size_t EnvyReport::weakly_envious_count() const {
    std::size_t k = 0;
    for (const auto& a : agents) k += a.weakly_envious;
    return k;
}

std::size_t EnvyReport::ld_envious_count() const {
    std::size_t k = 0;
    for (const auto& a : agents) k += a.ld_envious;
    return k;
}

EnvyReport envy_report(const AssignmentMatrix& matrix, const Profile& profile) {
    check_matrix(matrix, profile);
    const std::size_t n = profile.n();
    EnvyReport report;
    report.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& me = report.agents[i];
        const auto& pref = profile.pref(i);
        for (std::size_t k = 0; k < n && !(me.weakly_envious && me.ld_envious); ++k) {
            if (k == i) continue;
            const auto sd = sd_compare(pref, matrix.row(k), matrix.row(i));
            // Agent i envies k weakly unless her own row is at least as good at every prefix.
            if (!me.weakly_envious && (sd == DominanceVerdict::FirstDominates || sd == DominanceVerdict::Incomparable)) {
                me.weakly_envious = true;
                me.weak_target = AgentId(k);
            }
            if (!me.ld_envious && ld_compare(pref, matrix.row(k), matrix.row(i)) == DominanceVerdict::FirstDominates) {
                me.ld_envious = true;
                me.ld_target = AgentId(k);
            }
        }
        me.sd_envyfree = !me.weakly_envious;
    }
    report.envy_fraction = Rational(static_cast<std::int64_t>(report.weakly_envious_count()), static_cast<std::int64_t>(n));
    return report;
}

bool dps_check(const AssignmentMatrix& matrix, const Profile& profile) {
    check_matrix(matrix, profile);
    const std::size_t n = profile.n();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const auto& pi = profile.pref(i);
            const std::size_t len = common_prefix(pi, profile.pref(k));
            for (std::size_t pos = 0; pos < len; ++pos) {
                if (matrix.at(i, pi[pos].index) != matrix.at(k, pi[pos].index)) return false;
            }
        }
    }
    return true;
}

bool ups_check(const AssignmentMatrix& matrix, const Profile& profile) {
    check_matrix(matrix, profile);
    const std::size_t n = profile.n();
    const std::size_t m = profile.m();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const auto& pi = profile.pref(i);
            const std::size_t len = common_suffix(pi, profile.pref(k));
            for (std::size_t back = 0; back < len; ++back) {
                const std::size_t obj = pi[m - 1 - back].index;
                if (matrix.at(i, obj) != matrix.at(k, obj)) return false;
            }
        }
    }
    return true;
}

bool dps_converse_check(const AssignmentMatrix& matrix, const Profile& profile) {
    check_matrix(matrix, profile);
    const std::size_t n = profile.n();
    const std::size_t m = profile.m();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pi = profile.pref(i);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const std::size_t shared = common_prefix(pi, profile.pref(k));
            // Agreement on i's top-(len) objects must not extend past the shared prefix.
            std::size_t agree = 0;
            while (agree < m && matrix.at(i, pi[agree].index) == matrix.at(k, pi[agree].index)) ++agree;
            if (agree > shared) return false;
        }
    }
    return true;
}

}  // namespace rsdps
