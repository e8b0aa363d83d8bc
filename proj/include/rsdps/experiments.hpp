#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsdps/core.hpp"
#include "rsdps/manipulation.hpp"

namespace rsdps {

inline constexpr std::uint64_t kDefaultExhaustiveThreshold = 100'000;
inline constexpr std::uint64_t kDefaultSampleCount = 1000;

struct CellConfig {
    enum class Mode { Auto, Exhaustive, Sampled };
    enum class MisreportMode { Auto, Exhaustive, Sampled };

    std::size_t n = 2;
    std::size_t m = 2;
    /// Auto enumerates when (m!)^n <= exhaustive_threshold and samples otherwise.
    Mode mode = Mode::Auto;
    std::uint64_t samples = kDefaultSampleCount;
    std::uint64_t master_seed = 0;
    std::uint64_t exhaustive_threshold = kDefaultExhaustiveThreshold;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;

    /// Auto scans every misreport when m! <= misreport_cap and samples
    /// `misreport_budget` per agent otherwise.
    MisreportMode misreports = MisreportMode::Auto;
    std::uint64_t misreport_cap = 5040;
    std::uint64_t misreport_budget = 1000;
    bool measure_manipulation = true;

    unsigned threads = 1;
};

/// Counts of profiles on which a proven property failed. All zero unless
/// something is broken.
struct InvariantTally {
    std::uint64_t infeasible = 0;          // ps or rsd output failed validate()
    std::uint64_t rsd_dominates_ps = 0;    // RSD sd- or ld-dominates PS
    std::uint64_t rsd_ld_envy = 0;         // an agent is ld-envious under RSD
    std::uint64_t ps_weak_envy = 0;        // an agent is weakly envious under PS
    std::uint64_t rsd_dps = 0;             // RSD violates DPS
    std::uint64_t ps_partial_symmetry = 0; // PS violates DPS or UPS
    std::uint64_t manip_n_ge_m = 0;        // sd/ld manipulation of PS found with n >= m
    std::uint64_t chain = 0;               // sd => ld => manipulable or ld-envy => weak envy broken

    [[nodiscard]] bool clean() const noexcept;
    InvariantTally& operator+=(const InvariantTally& o);
};

struct CellMetrics {
    std::size_t n = 0;
    std::size_t m = 0;
    bool exhaustive = false;
    bool manipulation_measured = true;
    bool manipulation_lower_bound = false;  // misreports were sampled
    std::uint64_t seed = 0;
    std::uint64_t profiles = 0;

    std::uint64_t equal = 0;
    std::uint64_t ps_sd_dominates = 0;
    std::uint64_t ps_sd_dominates_strict = 0;
    std::uint64_t ps_ld_dominates = 0;
    std::uint64_t manipulable = 0;
    std::uint64_t sd_manipulable = 0;
    std::uint64_t ld_manipulable = 0;
    Rational envy_sum;  // sum over profiles of the RSD weak-envy fraction
    std::map<Rational, std::uint64_t> envy_distribution;
    InvariantTally invariants;

    [[nodiscard]] Rational fraction(std::uint64_t count) const;
    [[nodiscard]] Rational frac_equal() const { return fraction(equal); }
    [[nodiscard]] Rational frac_ps_sd_dominates_rsd() const { return fraction(ps_sd_dominates); }
    [[nodiscard]] Rational frac_ps_sd_dominates_rsd_strict() const { return fraction(ps_sd_dominates_strict); }
    [[nodiscard]] Rational frac_ps_ld_dominates_rsd() const { return fraction(ps_ld_dominates); }
    [[nodiscard]] Rational mean_frac_weakly_envious_rsd() const;
    [[nodiscard]] Rational frac_ps_manipulable() const { return fraction(manipulable); }
    [[nodiscard]] Rational frac_ps_sd_manipulable() const { return fraction(sd_manipulable); }
    [[nodiscard]] Rational frac_ps_ld_manipulable() const { return fraction(ld_manipulable); }

    /// Adds another partial tally of the same cell.
    void merge(const CellMetrics& other);
};

/// Evaluates every profile of the cell: PS and RSD, their sd/ld dominance,
/// RSD envy, and PS manipulability. Profiles are split across `threads`
/// workers; the merge is exact, so results do not depend on the thread count.
[[nodiscard]] CellMetrics run_cell(const CellConfig& config);

struct GridConfig {
    std::size_t n_min = 2, n_max = 6;
    std::size_t m_min = 2, m_max = 6;
    CellConfig cell;  // n and m are overwritten per cell
};

struct CellOutcome {
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<CellMetrics> metrics;
    std::string error;  // set when metrics is empty
    bool cap_exceeded = false;
};

/// Runs one cell of a grid, catching its failure into the outcome.
[[nodiscard]] CellOutcome run_grid_cell(std::size_t n, std::size_t m, const CellConfig& config);

/// Runs each cell independently; a failing cell is recorded and the rest continue.
[[nodiscard]] std::vector<CellOutcome> run_grid(const GridConfig& grid);

/// Per-profile fractions of weakly envious agents under RSD at n = m, with multiplicities.
[[nodiscard]] std::map<Rational, std::uint64_t> envy_distribution(std::size_t n, CellConfig config);

/// Seed of profile `index` within cell (n, m).
[[nodiscard]] std::uint64_t profile_seed(std::uint64_t master_seed, std::size_t n, std::size_t m, std::uint64_t index);

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

/// Header of the per-cell table.
[[nodiscard]] const std::vector<std::string>& cell_csv_columns();

void write_cells_csv_header(std::ostream& os);

/// Exhaustive cells print exact `p/q` fractions, sampled cells six-digit
/// decimals. Failed cells print `error` in the mode column.
void write_cell_csv_row(std::ostream& os, const CellOutcome& cell, std::uint64_t master_seed);

/// Header plus one row per cell.
void write_cells_csv(std::ostream& os, const std::vector<CellOutcome>& cells, std::uint64_t master_seed);

/// Rows `n,fraction,multiplicity`.
void write_distribution_csv(std::ostream& os, const std::map<std::size_t, std::map<Rational, std::uint64_t>>& dists);

}  // namespace rsdps
