#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsdps/dominance.hpp"
#include "rsdps/experiments.hpp"
#include "rsdps/io.hpp"
#include "rsdps/manipulation.hpp"
#include "rsdps/mechanisms.hpp"
#include "rsdps/svg_plot.hpp"

namespace rsdps::cli {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    buf << in.rdbuf();
    return buf.str();
}

// Writes the whole document or nothing: output is produced before the file is opened.
void write_file(const std::string& path, const std::string& content, std::ostream& out) {
    if (path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << content;
    if (!f.flush()) throw IoError("write failed: " + path);
}

struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

Range parse_range(const std::string& text, const std::string& flag) {
    auto number = [&](const std::string& s) -> std::size_t {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != s.size() || v == 0) {
            throw CLI::ValidationError(flag, "expected a positive integer or a range a..b, got '" + text + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    Range r;
    if (dots == std::string::npos) {
        r.lo = r.hi = number(text);
    } else {
        r.lo = number(text.substr(0, dots));
        r.hi = number(text.substr(dots + 2));
    }
    if (r.lo > r.hi) throw CLI::ValidationError(flag, "empty range '" + text + "'");
    return r;
}

std::string show(const Rational& r, std::optional<int> decimals) { return decimals ? r.to_decimal(*decimals) : r.str(); }

void print_table(std::ostream& os, const std::string& title, const AssignmentMatrix& a, const Profile& p,
                 std::optional<int> decimals) {
    std::vector<std::vector<std::string>> cells(p.n() + 1, std::vector<std::string>(p.m() + 1));
    for (std::size_t j = 0; j < p.m(); ++j) cells[0][j + 1] = p.object_names()[j];
    for (std::size_t i = 0; i < p.n(); ++i) {
        cells[i + 1][0] = p.agent_names()[i];
        for (std::size_t j = 0; j < p.m(); ++j) cells[i + 1][j + 1] = show(a.at(i, j), decimals);
    }
    std::vector<std::size_t> width(p.m() + 1, 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    os << title << '\n';
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
        }
        os << line << '\n';
    }
}

std::vector<std::pair<std::string, AssignmentMatrix>> mechanisms(const Profile& p, const std::string& which,
                                                                 std::size_t max_agents) {
    std::vector<std::pair<std::string, AssignmentMatrix>> out;
    if (which == "ps" || which == "both") out.emplace_back("PS", ps(p));
    if (which == "rsd" || which == "both") out.emplace_back("RSD", rsd(p, max_agents));
    return out;
}

// ---------------------------------------------------------------------------

struct AssignOptions {
    std::string input;
    std::string mechanism = "both";
    std::string format = "table";
    std::optional<int> decimals;
    std::size_t max_agents = kDefaultRsdMaxAgents;
};

int cmd_assign(const AssignOptions& o, std::ostream& out) {
    const Profile p = parse_profile(read_input(o.input));
    const auto results = mechanisms(p, o.mechanism, o.max_agents);
    std::ostringstream doc;
    if (o.format == "table") {
        for (std::size_t k = 0; k < results.size(); ++k) {
            if (k) doc << '\n';
            print_table(doc, results[k].first, results[k].second, p, o.decimals);
        }
    } else if (o.format == "csv") {
        doc << "mechanism,agent";
        for (const auto& name : p.object_names()) doc << ',' << name;
        doc << '\n';
        for (const auto& [name, a] : results) {
            for (std::size_t i = 0; i < p.n(); ++i) {
                doc << name << ',' << p.agent_names()[i];
                for (std::size_t j = 0; j < p.m(); ++j) doc << ',' << show(a.at(i, j), o.decimals);
                doc << '\n';
            }
        }
    } else {
        nlohmann::json j;
        j["agents"] = p.agent_names();
        j["objects"] = p.object_names();
        for (const auto& [name, a] : results) {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < p.n(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t c = 0; c < p.m(); ++c) row.push_back(show(a.at(i, c), o.decimals));
                rows.push_back(row);
            }
            j[name == "PS" ? "ps" : "rsd"] = rows;
        }
        doc << j.dump(2) << '\n';
    }
    out << doc.str();
    return kOk;
}

// ---------------------------------------------------------------------------

struct AuditOptions {
    std::string input;
    std::uint64_t cap = 5040;
    std::uint64_t misreports = 0;  // > 0 samples this many per agent
    std::uint64_t seed = 0;
    std::size_t max_agents = kDefaultRsdMaxAgents;
};

std::string preference_word(DominanceVerdict v) {
    switch (v) {
        case DominanceVerdict::Equal: return "equal";
        case DominanceVerdict::FirstDominates: return "prefers PS";
        case DominanceVerdict::SecondDominates: return "prefers RSD";
        case DominanceVerdict::Incomparable: return "incomparable";
    }
    return "?";
}

std::string relation(DominanceVerdict v, std::string_view mode) {
    switch (v) {
        case DominanceVerdict::Equal: return "PS = RSD";
        case DominanceVerdict::FirstDominates: return "PS " + std::string(mode) + "-dominates RSD";
        case DominanceVerdict::SecondDominates: return "RSD " + std::string(mode) + "-dominates PS";
        case DominanceVerdict::Incomparable: return std::string(mode) + "-incomparable";
    }
    return "?";
}

std::string agent_list(const Profile& p, const std::vector<std::size_t>& agents) {
    if (agents.empty()) return "none";
    std::string s;
    for (std::size_t i : agents) s += (s.empty() ? "" : ", ") + p.agent_names()[i];
    return s;
}

std::string row_text(std::span<const Rational> row) {
    std::string s = "(";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + row[j].str();
    return s + ")";
}

std::string witness_text(const Profile& p, const ManipulationWitness& w) {
    return "witness agent " + p.agent_names()[w.agent.index] + " -> " + p.describe(w.misreport);
}

void print_envy(std::ostream& os, const std::string& name, const EnvyReport& r, const Profile& p) {
    std::vector<std::size_t> weak, ld;
    for (std::size_t i = 0; i < r.agents.size(); ++i) {
        if (r.agents[i].weakly_envious) weak.push_back(i);
        if (r.agents[i].ld_envious) ld.push_back(i);
    }
    os << "  " << name << ": weakly envious: " << agent_list(p, weak) << "; ld-envious: " << agent_list(p, ld)
       << "; envious fraction " << r.envy_fraction << '\n';
    for (std::size_t i : weak) {
        os << "    agent " << p.agent_names()[i] << " envies agent "
           << p.agent_names()[r.agents[i].weak_target->index] << '\n';
    }
}

int cmd_audit(const AuditOptions& o, std::ostream& out) {
    const Profile p = parse_profile(read_input(o.input));
    const AssignmentMatrix ps_m = ps(p);
    const AssignmentMatrix rsd_m = rsd(p, o.max_agents);
    const MisreportScope scope =
        o.misreports > 0 ? MisreportScope::sampled(o.misreports, o.seed) : MisreportScope::exhaustive(o.cap);
    const ManipulationReport manip = ps_manipulability(p, scope);

    std::ostringstream os;
    os << "Profile (" << p.n() << " agents, " << p.m() << " objects)\n";
    for (std::size_t i = 0; i < p.n(); ++i) os << "  " << p.agent_names()[i] << ": " << p.describe(p.pref(i)) << '\n';
    os << '\n';
    print_table(os, "PS", ps_m, p, std::nullopt);
    os << '\n';
    print_table(os, "RSD", rsd_m, p, std::nullopt);

    os << "\nDominance (PS vs RSD)\n";
    std::vector<std::string> summary;
    std::vector<std::string> incomparable;
    for (auto mode : {DominanceMode::Stochastic, DominanceMode::Lexicographic}) {
        const auto v = profile_dominance(ps_m, rsd_m, p, mode);
        const auto agents = agent_verdicts(ps_m, rsd_m, p, mode);
        os << "  " << to_string(mode) << ": " << relation(v, to_string(mode)) << '\n';
        for (std::size_t i = 0; i < agents.size(); ++i) {
            os << "    agent " << p.agent_names()[i] << ": " << preference_word(agents[i]) << '\n';
        }
        if (v == DominanceVerdict::FirstDominates || v == DominanceVerdict::SecondDominates) {
            summary.push_back(relation(v, to_string(mode)));
        } else if (v == DominanceVerdict::Incomparable) {
            incomparable.push_back(relation(v, to_string(mode)));
        }
    }
    if (ps_m == rsd_m) summary.insert(summary.begin(), "PS = RSD");
    summary.insert(summary.end(), incomparable.begin(), incomparable.end());
    const std::size_t baseline = summary.size();

    os << "\nEnvy\n";
    const EnvyReport rsd_envy = envy_report(rsd_m, p);
    print_envy(os, "PS", envy_report(ps_m, p), p);
    print_envy(os, "RSD", rsd_envy, p);
    if (rsd_envy.weakly_envious_count() > 0) {
        summary.push_back("RSD weakly envious agents: " + std::to_string(rsd_envy.weakly_envious_count()));
    }

    os << "\nPS manipulability ("
       << (manip.exhaustive ? "all misreports" : "sampled misreports, flags are lower bounds") << ", "
       << manip.misreports_evaluated << " evaluated)\n";
    const std::pair<const char*, const std::optional<ManipulationWitness>*> flags[] = {
        {"manipulable", &manip.manipulable}, {"sd-manipulable", &manip.sd_manipulable},
        {"ld-manipulable", &manip.ld_manipulable}};
    for (const auto& [name, w] : flags) {
        os << "  " << name << ": ";
        if (*w) {
            os << "yes, " << witness_text(p, **w) << ", row " << row_text((**w).row) << '\n';
        } else {
            os << "no\n";
        }
    }
    const auto& strongest = manip.sd_manipulable   ? std::pair{"PS sd-manipulable", &manip.sd_manipulable}
                            : manip.ld_manipulable ? std::pair{"PS ld-manipulable", &manip.ld_manipulable}
                                                   : std::pair{"PS manipulable", &manip.manipulable};
    if (*strongest.second) {
        summary.push_back(strongest.first);
        summary.push_back(witness_text(p, **strongest.second));
    }

    os << "\nRSD strategyproofness audit: ";
    if (o.misreports > 0) {
        os << "skipped (misreports sampled)\n";
    } else {
        os << (rsd_strategyproofness_audit(p, o.cap) ? "pass" : "FAIL") << '\n';
    }

    if (summary.size() == baseline && (summary.empty() || summary.front() == "PS = RSD")) {
        summary.push_back("no findings");
    }
    os << "\nSummary: ";
    for (std::size_t k = 0; k < summary.size(); ++k) os << (k ? "; " : "") << summary[k];
    os << '\n';
    out << os.str();
    return kOk;
}

// ---------------------------------------------------------------------------

struct ExperimentOptions {
    std::string n_range;
    std::string m_range;
    bool exhaustive = false;
    bool sampled = false;
    std::uint64_t samples = kDefaultSampleCount;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t cap = kDefaultEnumerationCap;
    std::uint64_t threshold = kDefaultExhaustiveThreshold;
    std::uint64_t misreport_cap = 5040;
    std::uint64_t misreport_budget = 1000;
    bool no_manipulation = false;
    std::string output = "-";
    std::string envy_dist;
};

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
    const Range nr = parse_range(o.n_range, "--n");
    const Range mr = parse_range(o.m_range, "--m");
    CellConfig config;
    config.mode = o.exhaustive ? CellConfig::Mode::Exhaustive
                  : o.sampled  ? CellConfig::Mode::Sampled
                               : CellConfig::Mode::Auto;
    config.samples = o.samples;
    config.master_seed = o.seed;
    config.threads = std::max(1u, o.threads);
    config.enumeration_cap = o.cap;
    config.exhaustive_threshold = o.threshold;
    config.misreport_cap = o.misreport_cap;
    config.misreport_budget = o.misreport_budget;
    config.measure_manipulation = !o.no_manipulation;

    std::ofstream file;
    std::ostream* csv = &out;
    if (o.output != "-") {
        file.open(o.output, std::ios::binary);
        if (!file) throw IoError("cannot write " + o.output);
        csv = &file;
    }
    err << "seed: " << o.seed << '\n';

    bool cap_hit = false;
    bool failed = false;
    write_cells_csv_header(*csv);
    for (std::size_t n = nr.lo; n <= nr.hi; ++n) {
        for (std::size_t m = mr.lo; m <= mr.hi; ++m) {
            const CellOutcome cell = run_grid_cell(n, m, config);
            write_cell_csv_row(*csv, cell, o.seed);
            csv->flush();
            if (!*csv) throw IoError("write failed: " + o.output);
            if (cell.metrics) {
                err << "cell (" << n << "," << m << "): " << cell.metrics->profiles << " profiles\n";
                if (!cell.metrics->invariants.clean()) {
                    err << "cell (" << n << "," << m << "): invariant violations recorded\n";
                    failed = true;
                }
            } else {
                err << "cell (" << n << "," << m << ") failed: " << cell.error << '\n';
                cap_hit |= cell.cap_exceeded;
                failed |= !cell.cap_exceeded;
            }
        }
    }

    if (!o.envy_dist.empty()) {
        std::map<std::size_t, std::map<Rational, std::uint64_t>> dists;
        for (std::size_t n = nr.lo; n <= nr.hi; ++n) {
            try {
                dists[n] = envy_distribution(n, config);
            } catch (const CapExceeded& e) {
                err << "envy distribution n=" << n << " failed: " << e.what() << '\n';
                cap_hit = true;
            }
        }
        std::ostringstream doc;
        write_distribution_csv(doc, dists);
        write_file(o.envy_dist, doc.str(), out);
    }
    if (cap_hit) return kCapExceeded;
    return failed ? kUsage : kOk;
}

// ---------------------------------------------------------------------------

struct PlotOptions {
    std::string input;
    std::string figure;
    std::string output;
};

int cmd_plot(const PlotOptions& o, std::ostream& out) {
    std::istringstream in(read_input(o.input));
    const CsvTable table = read_csv(in);
    const std::string svg = render_figure(*parse_figure(o.figure), table);
    write_file(o.output, svg, out);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random serial dictatorship and probabilistic serial: assignments, audits, experiments, plots",
                 "rsdps"};
    app.require_subcommand(1);

    AssignOptions assign;
    auto* a = app.add_subcommand("assign", "Print the PS and/or RSD assignment of a profile");
    a->add_option("profile", assign.input, "Profile file (text or JSON), - for stdin")->required();
    a->add_option("--mechanism", assign.mechanism, "ps, rsd or both")
        ->check(CLI::IsMember({"ps", "rsd", "both"}))
        ->capture_default_str();
    a->add_option("--format", assign.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    a->add_option("--decimal", assign.decimals, "Show k-digit decimals instead of exact fractions")
        ->check(CLI::Range(0, 30));
    a->add_option("--max-agents", assign.max_agents, "Largest n accepted by RSD")->capture_default_str();

    AuditOptions audit;
    auto* u = app.add_subcommand("audit", "Compare PS and RSD on a profile: dominance, envy, manipulability");
    u->add_option("profile", audit.input, "Profile file (text or JSON), - for stdin")->required();
    u->add_option("--cap", audit.cap, "Largest m! scanned exhaustively per agent")->capture_default_str();
    u->add_option("--misreports", audit.misreports, "Sample this many misreports per agent instead of scanning all");
    u->add_option("--seed", audit.seed, "Seed for sampled misreports")->capture_default_str();
    u->add_option("--max-agents", audit.max_agents, "Largest n accepted by RSD")->capture_default_str();

    ExperimentOptions exp;
    auto* e = app.add_subcommand("experiment", "Run a grid of (n, m) cells and write the per-cell CSV");
    e->add_option("--n", exp.n_range, "Agent counts, a..b or a")->required();
    e->add_option("--m", exp.m_range, "Object counts, a..b or a")->required();
    auto* ex = e->add_flag("--exhaustive", exp.exhaustive, "Enumerate every profile");
    auto* sa = e->add_flag("--sampled", exp.sampled, "Sample profiles uniformly");
    ex->excludes(sa);
    e->add_option("--samples", exp.samples, "Profiles per sampled cell")->check(CLI::PositiveNumber)->capture_default_str();
    e->add_option("--seed", exp.seed, "Master seed")->capture_default_str();
    e->add_option("--threads", exp.threads, "Worker threads per cell")->check(CLI::PositiveNumber)->capture_default_str();
    e->add_option("--cap", exp.cap, "Largest profile space enumerated")->capture_default_str();
    e->add_option("--threshold", exp.threshold, "Auto mode enumerates cells with at most this many profiles")
        ->capture_default_str();
    e->add_option("--misreport-cap", exp.misreport_cap, "Largest m! scanned exhaustively per agent")
        ->capture_default_str();
    e->add_option("--misreport-budget", exp.misreport_budget, "Misreports sampled per agent above the cap")
        ->capture_default_str();
    e->add_flag("--no-manipulation", exp.no_manipulation, "Skip the PS manipulability search");
    e->add_option("-o,--out", exp.output, "CSV output path, - for stdout")->capture_default_str();
    e->add_option("--envy-dist", exp.envy_dist, "Also write the RSD envy distribution at n = m for each n");

    PlotOptions plot;
    auto* pl = app.add_subcommand("plot", "Render a CSV produced by experiment as an SVG figure");
    pl->add_option("csv", plot.input, "Cell CSV, or the envy distribution CSV for envy_box")->required();
    pl->add_option("--figure", plot.figure, "Figure to draw")->required()->check(CLI::IsMember(figure_names()));
    pl->add_option("-o,--out", plot.output, "SVG output path, - for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex_) {
        const int code = app.exit(ex_, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*a) return cmd_assign(assign, out);
        if (*u) return cmd_audit(audit, out);
        if (*e) return cmd_experiment(exp, out, err);
        if (*pl) return cmd_plot(plot, out);
    } catch (const CLI::ValidationError& ex_) {
        err << "error: " << ex_.what() << '\n';
        return kUsage;
    } catch (const CapExceeded& ex_) {
        err << "error: " << ex_.what() << '\n';
        err << "hint: raise --cap / --max-agents, or sample (audit --misreports K, experiment --sampled)\n";
        return kCapExceeded;
    } catch (const IoError& ex_) {
        err << "error: " << ex_.what() << '\n';
        return kIoError;
    } catch (const std::exception& ex_) {
        err << "error: " << ex_.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace rsdps::cli
