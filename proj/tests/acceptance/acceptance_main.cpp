// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rsdps/dominance.hpp"
#include "rsdps/experiments.hpp"
#include "rsdps/manipulation.hpp"
#include "rsdps/mechanisms.hpp"
#include "rsdps/svg_plot.hpp"

namespace {

using namespace rsdps;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kTrendSeed = 1;
constexpr std::uint64_t kTrendSamples = 1000;

int failures = 0;

void report(const std::string& id, const std::string& what, bool ok, const std::string& detail = "") {
    if (!ok) ++failures;
    std::cout << (ok ? "PASS " : "FAIL ") << id << "  " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
}

AssignmentMatrix matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<std::vector<std::string>> cells;
    for (auto r : rows) cells.emplace_back(r.begin(), r.end());
    return matrix_from_strings(cells);
}

std::vector<Rational> row(std::initializer_list<const char*> cells) {
    std::vector<Rational> out;
    for (auto c : cells) out.push_back(Rational::parse(c));
    return out;
}

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", v * 100);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Golden tables

void golden_tables() {
    const auto start = Clock::now();

    const Profile ex1 = Profile::from_strings({"abcd", "abcd", "badc", "badc"});
    report("1.1", "Example 1: PS and RSD matrices exact",
           ps(ex1) == matrix({{"1/2", "0", "1/2", "0"},
                              {"1/2", "0", "1/2", "0"},
                              {"0", "1/2", "0", "1/2"},
                              {"0", "1/2", "0", "1/2"}}) &&
               rsd(ex1) == matrix({{"5/12", "1/12", "5/12", "1/12"},
                                   {"5/12", "1/12", "5/12", "1/12"},
                                   {"1/12", "5/12", "1/12", "5/12"},
                                   {"1/12", "5/12", "1/12", "5/12"}}));

    const Profile ex2 = Profile::from_strings({"acb", "abc", "bac"});
    const bool ex2_tables = ps(ex2) == matrix({{"1/2", "0", "1/2"}, {"1/2", "1/4", "1/4"}, {"0", "3/4", "1/4"}}) &&
                            rsd(ex2) == matrix({{"1/2", "0", "1/2"}, {"1/2", "1/6", "1/3"}, {"0", "5/6", "1/6"}});
    report("1.2a", "Example 2: PS and RSD matrices exact", ex2_tables);
    const auto verdicts = agent_verdicts(ps(ex2), rsd(ex2), ex2, DominanceMode::Stochastic);
    report("1.2b", "Example 2: sd-incomparable; agent 1 equal, agent 2 prefers PS, agent 3 prefers RSD",
           profile_dominance(ps(ex2), rsd(ex2), ex2, DominanceMode::Stochastic) == DominanceVerdict::Incomparable &&
               verdicts == std::vector{DominanceVerdict::Equal, DominanceVerdict::FirstDominates,
                                       DominanceVerdict::SecondDominates});

    const Profile ex3 = Profile::from_strings({"cabd", "acdb", "cbda", "acbd"});
    report("1.3a", "Example 3: PS and RSD matrices exact",
           ps(ex3) == matrix({{"0", "1/3", "1/2", "1/6"},
                              {"1/2", "0", "0", "1/2"},
                              {"0", "1/3", "1/2", "1/6"},
                              {"1/2", "1/3", "0", "1/6"}}) &&
               rsd(ex3) == matrix({{"1/12", "1/3", "5/12", "1/6"},
                                   {"11/24", "0", "1/12", "11/24"},
                                   {"0", "5/12", "5/12", "1/6"},
                                   {"11/24", "1/4", "1/12", "5/24"}}));
    const PreferenceOrder& p2 = ex3.pref(1);
    const ObjectId c = *ex3.find_object("c");
    const bool surplus_ok = surplus(p2, c, rsd(ex3).row(1)) == Rational(13, 24) &&
                            surplus(p2, c, ps(ex3).row(1)) == Rational(1, 2);
    report("1.3b", "Example 3: PS ld-dominates RSD; sd-incomparable via 13/24 vs 1/2",
           profile_dominance(ps(ex3), rsd(ex3), ex3, DominanceMode::Lexicographic) == DominanceVerdict::FirstDominates &&
               profile_dominance(ps(ex3), rsd(ex3), ex3, DominanceMode::Stochastic) == DominanceVerdict::Incomparable &&
               surplus_ok);

    const Profile ex4 = Profile::from_strings({"abcd", "bcad"});
    const Profile ex4_lie = Profile::from_strings({"bacd", "bcad"});
    report("1.4a", "Example 4: truthful and misreport PS matrices exact",
           ps(ex4) == matrix({{"1", "0", "1/2", "1/2"}, {"0", "1", "1/2", "1/2"}}) &&
               ps(ex4_lie) == matrix({{"1", "1/2", "0", "1/2"}, {"0", "1/2", "1", "1/2"}}));
    const auto m4 = ps_manipulability(ex4);
    report("1.4b", "Example 4: sd-manipulation witness (agent 1, (b a c d))",
           m4.sd_manipulable && m4.sd_manipulable->agent == AgentId(0) &&
               m4.sd_manipulable->misreport == ex4_lie.pref(0));

    const Profile ex5 = Profile::from_strings({"bca", "cab", "bca"});
    const auto m5 = ps_manipulability(ex5);
    report("1.5a", "Discussion example: PS = RSD exactly", ps(ex5) == rsd(ex5));
    report("1.5b", "Discussion example: witness (agent 1, (c b a)) with row (1/4, 1/4, 1/2); not sd-manipulable",
           m5.flags.manipulable && !m5.flags.sd_manipulable && m5.manipulable &&
               m5.manipulable->agent == AgentId(0) && m5.manipulable->misreport == Profile::from_strings({"cba"}).pref(0) &&
               m5.manipulable->row == row({"1/4", "1/4", "1/2"}));

    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    report("1.6", "Golden tables complete in under 1 s", secs < 1.0, std::to_string(secs) + " s");
}

// ---------------------------------------------------------------------------
// 2. Exhaustive property suites

struct PropertyCounts {
    std::uint64_t profiles = 0;
    std::uint64_t cells = 0;
    std::uint64_t rsd_sp = 0;        // audit failures
    std::uint64_t rsd_ld_envy = 0;
    std::uint64_t ps_envy = 0;
    std::uint64_t ps_dominated = 0;
    std::uint64_t manip_n_ge_m = 0;
    std::uint64_t profiles_n_ge_m = 0;
    std::uint64_t manip_m2 = 0;
    std::uint64_t profiles_m2 = 0;
    std::uint64_t ps_ne_rsd_small = 0;
    std::uint64_t profiles_small = 0;
    std::uint64_t brute_mismatch = 0;
    std::uint64_t brute_checked = 0;
    std::uint64_t chain = 0;
};

void check_profile(const Profile& p, PropertyCounts& c) {
    const std::size_t n = p.n(), m = p.m();
    const AssignmentMatrix r = rsd(p);
    const AssignmentMatrix s = ps(p);
    ++c.profiles;
    if (!rsd_strategyproofness_audit(p)) ++c.rsd_sp;

    const EnvyReport re = envy_report(r, p);
    const EnvyReport se = envy_report(s, p);
    if (re.ld_envious_count() > 0) ++c.rsd_ld_envy;
    if (se.weakly_envious_count() > 0) ++c.ps_envy;
    for (const auto* rep : {&re, &se}) {
        for (const auto& a : rep->agents) {
            if (a.ld_envious && !a.weakly_envious) ++c.chain;
        }
    }
    if (profile_dominance(r, s, p, DominanceMode::Stochastic) == DominanceVerdict::FirstDominates ||
        profile_dominance(r, s, p, DominanceMode::Lexicographic) == DominanceVerdict::FirstDominates) {
        ++c.ps_dominated;
    }

    const auto f = ps_manipulability(p).flags;
    if ((f.sd_manipulable && !f.ld_manipulable) || (f.ld_manipulable && !f.manipulable)) ++c.chain;
    if (n >= m) {
        ++c.profiles_n_ge_m;
        if (f.sd_manipulable || f.ld_manipulable) ++c.manip_n_ge_m;
    }
    if (m == 2 && n <= 5) {
        ++c.profiles_m2;
        if (f.manipulable) ++c.manip_m2;
    }
    if (m <= 2 && n <= 3) {
        ++c.profiles_small;
        if (r != s) ++c.ps_ne_rsd_small;
    }
    if (n <= 5) {
        ++c.brute_checked;
        if (r != rsd_bruteforce(p)) ++c.brute_mismatch;
    }
}

std::string of(std::uint64_t bad, std::uint64_t total) {
    return std::to_string(bad) + " violations / " + std::to_string(total) + " profiles";
}

void property_suites() {
    const auto start = Clock::now();
    PropertyCounts c;
    std::string cells;
    // Every cell with (m!)^n <= 1e5 and m <= 7, n <= 12 (the RSD agent limit).
    for (std::size_t m = 1; m <= 7; ++m) {
        for (std::size_t n = 1; n <= 12; ++n) {
            const auto size = profile_space_size(n, m);
            if (!size || *size > kDefaultExhaustiveThreshold) break;
            ++c.cells;
            for (const Profile& p : enumerate_profiles(n, m)) check_profile(p, c);
        }
    }
    const std::string scope = std::to_string(c.cells) + " cells";
    report("2.1", "RSD sd-strategyproofness audit passes on every profile", c.rsd_sp == 0,
           of(c.rsd_sp, c.profiles) + ", " + scope);
    report("2.2", "RSD is ld-envyfree on every profile", c.rsd_ld_envy == 0, of(c.rsd_ld_envy, c.profiles));
    report("2.3a", "PS is sd-envyfree on every profile", c.ps_envy == 0, of(c.ps_envy, c.profiles));
    report("2.3b", "PS is never sd- or ld-dominated by RSD", c.ps_dominated == 0, of(c.ps_dominated, c.profiles));
    report("2.4a", "n >= m: no sd- or ld-manipulable PS profile", c.manip_n_ge_m == 0,
           of(c.manip_n_ge_m, c.profiles_n_ge_m));
    report("2.4b", "m = 2, n <= 5: no manipulable PS profile", c.manip_m2 == 0, of(c.manip_m2, c.profiles_m2));
    report("2.5", "m <= 2, n <= 3: PS = RSD", c.ps_ne_rsd_small == 0, of(c.ps_ne_rsd_small, c.profiles_small));

    std::uint64_t random_mismatch = 0;
    Rng rng(2024);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 6 + uniform_below(rng, 2);
        const std::size_t m = 1 + uniform_below(rng, 8);
        const Profile p = sample_profile(n, m, rng);
        if (rsd(p) != rsd_bruteforce(p)) ++random_mismatch;
    }
    report("2.6a", "rsd equals rsd_bruteforce on every exhaustive profile with n <= 5", c.brute_mismatch == 0,
           of(c.brute_mismatch, c.brute_checked));
    report("2.6b", "rsd equals rsd_bruteforce on 500 random profiles with n in {6, 7}", random_mismatch == 0,
           of(random_mismatch, 500));
    report("2.7", "Inclusion chains: sd-manip => ld-manip => manip; ld-envy => weak envy", c.chain == 0,
           of(c.chain, c.profiles));
    std::cout << "      property suites took "
              << std::chrono::duration<double>(Clock::now() - start).count() << " s" << std::endl;
}

// ---------------------------------------------------------------------------
// 3. Sampled trends

CellMetrics sampled(std::size_t n, std::size_t m) {
    CellConfig c;
    c.n = n;
    c.m = m;
    c.mode = CellConfig::Mode::Sampled;
    c.samples = kTrendSamples;
    c.master_seed = kTrendSeed;
    return run_cell(c);
}

void trends() {
    const auto start = Clock::now();
    std::map<std::pair<std::size_t, std::size_t>, CellMetrics> cells;
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
             {3, 3}, {4, 4}, {5, 5}, {6, 6}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {4, 3}, {5, 4}, {4, 5}, {5, 6}}) {
        cells.emplace(std::pair{n, m}, sampled(n, m));
    }
    auto at = [&](std::size_t n, std::size_t m) -> const CellMetrics& { return cells.at({n, m}); };
    auto d = [](const Rational& r) { return r.to_double(); };

    {
        bool monotone = true;
        std::string values;
        for (std::size_t n = 3; n <= 6; ++n) {
            const double v = d(at(n, n).frac_ps_sd_dominates_rsd());
            values += (values.empty() ? "" : ", ") + std::to_string(n) + ":" + pct(v);
            if (n > 3 && v > d(at(n - 1, n - 1).frac_ps_sd_dominates_rsd()) + 0.02) monotone = false;
        }
        const double six = d(at(6, 6).frac_ps_sd_dominates_rsd());
        report("3.1a", "PS sd-dominates RSD at n = m: non-increasing for n = 3..6 within 2pp", monotone, values);
        report("3.1b", "PS sd-dominates RSD at n = m = 6 below 0.05", six < 0.05, pct(six));
    }
    {
        const double six = d(at(6, 6).frac_ps_ld_dominates_rsd());
        const double two_six = d(at(2, 6).frac_ps_ld_dominates_rsd());
        report("3.2a", "PS ld-dominates RSD at n = m = 6 below 0.10 (+3pp)", six < 0.13, pct(six));
        report("3.2b", "PS ld-dominates RSD at (2,6) above 0.90 (-3pp)", two_six > 0.87, pct(two_six));
    }
    {
        const double v = d(at(6, 6).frac_ps_manipulable());
        report("3.3", "PS manipulable at (6,6) at least 0.95 (-3pp)", v >= 0.92, pct(v));
    }
    {
        bool increasing = true;
        std::string values;
        for (std::size_t m = 3; m <= 6; ++m) {
            const double v = d(at(2, m).frac_ps_sd_manipulable());
            values += (values.empty() ? "" : ", ") + std::to_string(m) + ":" + pct(v);
            if (m > 3 && v < d(at(2, m - 1).frac_ps_sd_manipulable()) - 0.05) increasing = false;
        }
        const double v = d(at(2, 6).frac_ps_sd_manipulable());
        report("3.4", "PS sd-manipulable along n = 2, m = 3..6: increasing (5pp) and above 0.80 (-5pp) at (2,6)",
               increasing && v > 0.75, values);
    }
    for (std::size_t n : {4u, 5u}) {
        const double square = d(at(n, n).mean_frac_weakly_envious_rsd());
        const double fewer = d(at(n, n - 1).mean_frac_weakly_envious_rsd());
        const double more = d(at(n, n + 1).mean_frac_weakly_envious_rsd());
        report("3.5" + std::string(n == 4 ? "a" : "b"),
               "RSD envy dips at n = m = " + std::to_string(n) + " relative to (n, m-1)", square < fewer,
               "(" + std::to_string(n) + "," + std::to_string(n - 1) + "): " + pct(fewer) + ", (" + std::to_string(n) +
                   "," + std::to_string(n) + "): " + pct(square) + ", (" + std::to_string(n) + "," +
                   std::to_string(n + 1) + "): " + pct(more));
    }
    std::cout << "      trend cells (" << kTrendSamples << " samples, seed " << kTrendSeed << ") took "
              << std::chrono::duration<double>(Clock::now() - start).count() << " s" << std::endl;
}

// ---------------------------------------------------------------------------
// 4. Determinism

int cli(std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "rsdps");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
    if (out) *out = o.str();
    return code;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rsdps_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    bool same = true;
    std::string sizes;
    for (const std::string threads : {"1", "2", "7"}) {
        const auto path = (dir / ("grid_t" + threads + ".csv")).string();
        const int code = cli({"experiment", "--n", "2..5", "--m", "2..5", "--samples", "200", "--seed", "42",
                              "--threads", threads, "-o", path});
        same &= code == 0;
        same &= slurp(path) == slurp(dir / "grid_t1.csv");
    }
    const auto rerun = (dir / "rerun.csv").string();
    same &= cli({"experiment", "--n", "2..5", "--m", "2..5", "--samples", "200", "--seed", "42", "-o", rerun}) == 0;
    same &= slurp(rerun) == slurp(dir / "grid_t1.csv");
    report("4.1", "experiment: identical seed gives byte-identical CSV for --threads 1, 2, 7 and on rerun", same);

    bool svg_same = true;
    for (const auto& fig : figure_names()) {
        if (fig == "envy_box") continue;
        const auto a = (dir / (fig + "_a.svg")).string();
        const auto b = (dir / (fig + "_b.svg")).string();
        svg_same &= cli({"plot", (dir / "grid_t1.csv").string(), "--figure", fig, "-o", a}) == 0;
        svg_same &= cli({"plot", (dir / "grid_t1.csv").string(), "--figure", fig, "-o", b}) == 0;
        svg_same &= !slurp(a).empty() && slurp(a) == slurp(b);
    }
    const auto dist = (dir / "dist.csv").string();
    svg_same &= cli({"experiment", "--n", "2..4", "--m", "2", "--no-manipulation", "-o", (dir / "x.csv").string(),
                     "--envy-dist", dist}) == 0;
    svg_same &= cli({"plot", dist, "--figure", "envy_box", "-o", (dir / "box_a.svg").string()}) == 0;
    svg_same &= cli({"plot", dist, "--figure", "envy_box", "-o", (dir / "box_b.svg").string()}) == 0;
    svg_same &= slurp(dir / "box_a.svg") == slurp(dir / "box_b.svg");
    report("4.2", "plot: identical CSV gives byte-identical SVG for every figure", svg_same);
    fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> only(argv + 1, argv + argc);  // optional subset: golden properties trends determinism
    auto wanted = [&](const std::string& s) { return only.empty() || std::find(only.begin(), only.end(), s) != only.end(); };
    if (wanted("golden")) golden_tables();
    if (wanted("determinism")) determinism();
    if (wanted("properties")) property_suites();
    if (wanted("trends")) trends();
    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
