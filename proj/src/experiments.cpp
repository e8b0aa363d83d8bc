#include "rsdps/experiments.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "rsdps/dominance.hpp"
#include "rsdps/mechanisms.hpp"

namespace rsdps {

bool InvariantTally::clean() const noexcept {
    return infeasible == 0 && rsd_dominates_ps == 0 && rsd_ld_envy == 0 && ps_weak_envy == 0 && rsd_dps == 0 &&
           ps_partial_symmetry == 0 && manip_n_ge_m == 0 && chain == 0;
}

InvariantTally& InvariantTally::operator+=(const InvariantTally& o) {
    infeasible += o.infeasible;
    rsd_dominates_ps += o.rsd_dominates_ps;
    rsd_ld_envy += o.rsd_ld_envy;
    ps_weak_envy += o.ps_weak_envy;
    rsd_dps += o.rsd_dps;
    ps_partial_symmetry += o.ps_partial_symmetry;
    manip_n_ge_m += o.manip_n_ge_m;
    chain += o.chain;
    return *this;
}

Rational CellMetrics::fraction(std::uint64_t count) const {
    if (profiles == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(profiles));
}

Rational CellMetrics::mean_frac_weakly_envious_rsd() const {
    if (profiles == 0) return Rational(0);
    return envy_sum / Rational(static_cast<std::int64_t>(profiles));
}

void CellMetrics::merge(const CellMetrics& o) {
    profiles += o.profiles;
    equal += o.equal;
    ps_sd_dominates += o.ps_sd_dominates;
    ps_sd_dominates_strict += o.ps_sd_dominates_strict;
    ps_ld_dominates += o.ps_ld_dominates;
    manipulable += o.manipulable;
    sd_manipulable += o.sd_manipulable;
    ld_manipulable += o.ld_manipulable;
    envy_sum += o.envy_sum;
    for (const auto& [value, count] : o.envy_distribution) envy_distribution[value] += count;
    invariants += o.invariants;
}

std::uint64_t profile_seed(std::uint64_t master_seed, std::size_t n, std::size_t m, std::uint64_t index) {
    return derive_seed(master_seed, {n, m, index});
}

namespace {

bool misreports_exhaustive(const CellConfig& config) {
    switch (config.misreports) {
        case CellConfig::MisreportMode::Exhaustive: return true;
        case CellConfig::MisreportMode::Sampled: return false;
        case CellConfig::MisreportMode::Auto: break;
    }
    auto perms = profile_space_size(1, config.m);
    return perms && *perms <= config.misreport_cap;
}

void evaluate_profile(const Profile& profile, const CellConfig& config, bool exhaustive_misreports,
                      std::uint64_t seed, CellMetrics& acc) {
    const AssignmentMatrix ps_matrix = ps(profile);
    const AssignmentMatrix rsd_matrix = rsd(profile);
    auto& inv = acc.invariants;

    ++acc.profiles;
    if (validate(ps_matrix) || validate(rsd_matrix)) ++inv.infeasible;
    if (ps_matrix == rsd_matrix) ++acc.equal;

    const auto sd = profile_dominance(ps_matrix, rsd_matrix, profile, DominanceMode::Stochastic);
    const auto ld = profile_dominance(ps_matrix, rsd_matrix, profile, DominanceMode::Lexicographic);
    if (sd == DominanceVerdict::FirstDominates) ++acc.ps_sd_dominates;
    if (ld == DominanceVerdict::FirstDominates) ++acc.ps_ld_dominates;
    if (strictly_sd_dominates(ps_matrix, rsd_matrix, profile)) ++acc.ps_sd_dominates_strict;
    if (sd == DominanceVerdict::SecondDominates || ld == DominanceVerdict::SecondDominates) ++inv.rsd_dominates_ps;
    if (sd == DominanceVerdict::FirstDominates && ld != DominanceVerdict::FirstDominates) ++inv.chain;

    const EnvyReport rsd_envy = envy_report(rsd_matrix, profile);
    acc.envy_sum += rsd_envy.envy_fraction;
    ++acc.envy_distribution[rsd_envy.envy_fraction];
    if (rsd_envy.ld_envious_count() > 0) ++inv.rsd_ld_envy;
    if (envy_report(ps_matrix, profile).weakly_envious_count() > 0) ++inv.ps_weak_envy;
    for (const auto& a : rsd_envy.agents) {
        if (a.ld_envious && !a.weakly_envious) ++inv.chain;
    }
    if (!dps_check(rsd_matrix, profile)) ++inv.rsd_dps;
    if (!dps_check(ps_matrix, profile) || !ups_check(ps_matrix, profile)) ++inv.ps_partial_symmetry;

    if (!config.measure_manipulation) return;
    const MisreportScope scope = exhaustive_misreports
                                     ? MisreportScope::exhaustive(config.misreport_cap)
                                     : MisreportScope::sampled(config.misreport_budget, derive_seed(seed, {0x6d6973ULL}));
    const ManipulationReport report = ps_manipulability(profile, scope);
    const auto& f = report.flags;
    acc.manipulable += f.manipulable;
    acc.sd_manipulable += f.sd_manipulable;
    acc.ld_manipulable += f.ld_manipulable;
    if ((f.sd_manipulable && !f.ld_manipulable) || (f.ld_manipulable && !f.manipulable)) ++inv.chain;
    if (profile.n() >= profile.m() && (f.sd_manipulable || f.ld_manipulable)) ++inv.manip_n_ge_m;
}

}  // namespace

CellMetrics run_cell(const CellConfig& config) {
    if (config.n == 0 || config.m == 0) throw std::invalid_argument("need n >= 1 and m >= 1");
    if (config.samples == 0) throw std::invalid_argument("sample count must be at least 1");

    const auto space_size = profile_space_size(config.n, config.m);
    bool exhaustive = false;
    switch (config.mode) {
        case CellConfig::Mode::Exhaustive: exhaustive = true; break;
        case CellConfig::Mode::Sampled: exhaustive = false; break;
        case CellConfig::Mode::Auto: exhaustive = space_size && *space_size <= config.exhaustive_threshold; break;
    }

    std::optional<ProfileSpace> space;
    if (exhaustive) space.emplace(enumerate_profiles(config.n, config.m, config.enumeration_cap));
    const bool exhaustive_misreports = misreports_exhaustive(config);
    const std::uint64_t total = exhaustive ? space->size() : config.samples;

    const unsigned workers = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(std::min<std::uint64_t>(total, 1024))));
    std::vector<CellMetrics> partial(workers);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    constexpr std::uint64_t kChunk = 16;

    auto work = [&](CellMetrics& acc) {
        try {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= total) return;
                const std::uint64_t end = std::min(total, begin + kChunk);
                for (std::uint64_t k = begin; k < end; ++k) {
                    const std::uint64_t seed = profile_seed(config.master_seed, config.n, config.m, k);
                    if (exhaustive) {
                        evaluate_profile(space->at(k), config, exhaustive_misreports, seed, acc);
                    } else {
                        Rng rng(seed);
                        evaluate_profile(sample_profile(config.n, config.m, rng), config, exhaustive_misreports, seed, acc);
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(total);
        }
    };

    if (workers == 1) {
        work(partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, std::ref(partial[w]));
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    CellMetrics out;
    out.n = config.n;
    out.m = config.m;
    out.exhaustive = exhaustive;
    out.manipulation_measured = config.measure_manipulation;
    out.manipulation_lower_bound = config.measure_manipulation && !exhaustive_misreports;
    out.seed = config.master_seed;
    for (const auto& p : partial) out.merge(p);
    return out;
}

std::vector<CellOutcome> run_grid(const GridConfig& grid) {
    if (grid.n_min > grid.n_max || grid.m_min > grid.m_max || grid.n_min == 0 || grid.m_min == 0) {
        throw std::invalid_argument("empty or invalid grid range");
    }
    std::vector<CellOutcome> out;
    for (std::size_t n = grid.n_min; n <= grid.n_max; ++n) {
        for (std::size_t m = grid.m_min; m <= grid.m_max; ++m) {
            out.push_back(run_grid_cell(n, m, grid.cell));
        }
    }
    return out;
}

CellOutcome run_grid_cell(std::size_t n, std::size_t m, const CellConfig& config) {
    CellConfig c = config;
    c.n = n;
    c.m = m;
    CellOutcome cell{n, m, std::nullopt, {}, false};
    try {
        cell.metrics = run_cell(c);
    } catch (const CapExceeded& e) {
        cell.error = e.what();
        cell.cap_exceeded = true;
    } catch (const std::exception& e) {
        cell.error = e.what();
    }
    return cell;
}

std::map<Rational, std::uint64_t> envy_distribution(std::size_t n, CellConfig config) {
    config.n = n;
    config.m = n;
    config.measure_manipulation = false;
    return run_cell(config).envy_distribution;
}

const std::vector<std::string>& cell_csv_columns() {
    static const std::vector<std::string> columns{
        "n", "m", "mode", "samples", "frac_equal", "frac_ps_sd_dom", "frac_ps_sd_dom_strict", "frac_ps_ld_dom",
        "mean_envy_frac", "frac_manip", "frac_sd_manip", "frac_ld_manip", "seed"};
    return columns;
}

void write_cells_csv_header(std::ostream& os) {
    const auto& columns = cell_csv_columns();
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
}

void write_cell_csv_row(std::ostream& os, const CellOutcome& cell, std::uint64_t master_seed) {
    os << cell.n << ',' << cell.m << ',';
    if (!cell.metrics) {
        os << "error,,,,,,,,,," << master_seed << '\n';
        return;
    }
    const CellMetrics& c = *cell.metrics;
    auto fmt = [&](const Rational& r) { return c.exhaustive ? r.str() : r.to_decimal(6); };
    std::string mode = c.exhaustive ? "exhaustive" : "sampled";
    if (c.manipulation_lower_bound) mode += "+manip_lb";
    os << mode << ',' << c.profiles << ',' << fmt(c.frac_equal()) << ',' << fmt(c.frac_ps_sd_dominates_rsd()) << ','
       << fmt(c.frac_ps_sd_dominates_rsd_strict()) << ',' << fmt(c.frac_ps_ld_dominates_rsd()) << ','
       << fmt(c.mean_frac_weakly_envious_rsd()) << ',';
    if (c.manipulation_measured) {
        os << fmt(c.frac_ps_manipulable()) << ',' << fmt(c.frac_ps_sd_manipulable()) << ','
           << fmt(c.frac_ps_ld_manipulable());
    } else {
        os << ",,";
    }
    os << ',' << master_seed << '\n';
}

void write_cells_csv(std::ostream& os, const std::vector<CellOutcome>& cells, std::uint64_t master_seed) {
    write_cells_csv_header(os);
    for (const auto& cell : cells) write_cell_csv_row(os, cell, master_seed);
}

void write_distribution_csv(std::ostream& os, const std::map<std::size_t, std::map<Rational, std::uint64_t>>& dists) {
    os << "n,fraction,multiplicity\n";
    for (const auto& [n, dist] : dists) {
        for (const auto& [value, count] : dist) os << n << ',' << value.str() << ',' << count << '\n';
    }
}

}  // namespace rsdps
