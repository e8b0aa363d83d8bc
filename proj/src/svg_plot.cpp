#include "rsdps/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "rsdps/rational.hpp"

namespace rsdps {

namespace {

constexpr std::array<int, 3> kLow{0xf7, 0xfb, 0xff};
constexpr std::array<int, 3> kHigh{0x08, 0x30, 0x6b};
constexpr const char* kMissing = "#d9d9d9";
constexpr std::array<const char*, 8> kPalette{"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                              "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string num(double v, int digits = 1) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string colour(double t) {
    t = std::clamp(t, 0.0, 1.0);
    char buf[8];
    std::array<int, 3> c{};
    for (std::size_t k = 0; k < 3; ++k) c[k] = static_cast<int>(std::lround(kLow[k] + (kHigh[k] - kLow[k]) * t));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::optional<double> value(const std::string& field, std::size_t line) {
    if (field.empty()) return std::nullopt;
    try {
        return Rational::parse(field).to_double();
    } catch (const std::exception&) {
        throw PlotError("row " + std::to_string(line) + ": not a number: '" + field + "'");
    }
}

std::size_t integer(const std::string& field, std::size_t line) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(field, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != field.size()) {
        throw PlotError("row " + std::to_string(line) + ": not an integer: '" + field + "'");
    }
    return v;
}

const std::string& cell(const CsvTable& t, std::size_t row, std::size_t col) {
    if (col >= t.rows[row].size()) throw PlotError("row " + std::to_string(row + 2) + " has too few fields");
    return t.rows[row][col];
}

std::string_view metric_column(Figure f) {
    switch (f) {
        case Figure::SdDom: return "frac_ps_sd_dom";
        case Figure::LdDom: return "frac_ps_ld_dom";
        case Figure::EnvyHeat: return "mean_envy_frac";
        case Figure::Manip: return "frac_manip";
        case Figure::SdManip: return "frac_sd_manip";
        case Figure::LdManip: return "frac_ld_manip";
        case Figure::EnvyBox: return "fraction";
    }
    return "";
}

std::string_view title(Figure f) {
    switch (f) {
        case Figure::SdDom: return "PS sd-dominates RSD: fraction of profiles";
        case Figure::LdDom: return "PS ld-dominates RSD: fraction of profiles";
        case Figure::EnvyHeat: return "RSD: mean fraction of weakly envious agents";
        case Figure::Manip: return "PS: fraction of manipulable profiles";
        case Figure::SdManip: return "PS: fraction of sd-manipulable profiles";
        case Figure::LdManip: return "PS: fraction of ld-manipulable profiles";
        case Figure::EnvyBox: return "RSD at n = m: weakly envious agents per profile";
    }
    return "";
}

struct Point {
    std::size_t n;
    std::size_t m;
    std::optional<double> v;
};

std::vector<Point> cell_points(Figure f, const CsvTable& t) {
    const std::size_t cn = t.column("n");
    const std::size_t cm = t.column("m");
    const std::size_t cv = t.column(metric_column(f));
    std::vector<Point> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out.push_back({integer(cell(t, r, cn), r + 2), integer(cell(t, r, cm), r + 2), value(cell(t, r, cv), r + 2)});
    }
    return out;
}

class Svg {
public:
    Svg(int width, int height) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
             << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\">\n"
             << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    }
    void text(double x, double y, std::string_view s, int size = 12, std::string_view anchor = "middle",
              std::string_view extra = "") {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size << "\" text-anchor=\""
             << anchor << '"' << extra << '>' << escape(s) << "</text>\n";
    }
    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none") {
        out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
             << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, std::string_view stroke = "#000000") {
        out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
             << "\" stroke=\"" << stroke << "\"/>\n";
    }
    void raw(std::string_view s) { out_ << s; }
    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

private:
    std::ostringstream out_;
};

// Vertical 0..1 axis from y0 (value 0) up to y1 (value 1) at x.
void value_axis(Svg& svg, double x, double y0, double y1) {
    svg.line(x, y0, x, y1);
    for (int k = 0; k <= 4; ++k) {
        const double y = y0 + (y1 - y0) * k / 4.0;
        svg.line(x - 4, y, x, y);
        svg.text(x - 6, y + 4, num(k / 4.0, 2), 11, "end");
    }
    svg.text(x - 40, (y0 + y1) / 2, "fraction", 12, "middle",
             " transform=\"rotate(-90 " + num(x - 40) + ' ' + num((y0 + y1) / 2) + ")\"");
}

std::string heatmap(Figure f, const CsvTable& t) {
    const auto points = cell_points(f, t);
    std::set<std::size_t> ns, ms;
    for (const auto& p : points) {
        ns.insert(p.n);
        ms.insert(p.m);
    }
    const std::vector<std::size_t> nv(ns.begin(), ns.end()), mv(ms.begin(), ms.end());
    constexpr int kCell = 48, kLeft = 70, kTop = 50;
    const int grid_w = kCell * static_cast<int>(mv.size());
    const int grid_h = kCell * static_cast<int>(nv.size());
    const int width = std::max(kLeft + grid_w + 110, 400);
    const int height = kTop + grid_h + 60;

    Svg svg(width, height);
    svg.text(width / 2.0, 24, title(f), 14);
    auto col = [&](std::size_t m) { return std::lower_bound(mv.begin(), mv.end(), m) - mv.begin(); };
    auto row = [&](std::size_t n) {  // n grows upward
        return static_cast<std::ptrdiff_t>(nv.size()) - 1 - (std::lower_bound(nv.begin(), nv.end(), n) - nv.begin());
    };
    for (const auto& p : points) {
        const double x = kLeft + kCell * static_cast<double>(col(p.m));
        const double y = kTop + kCell * static_cast<double>(row(p.n));
        svg.rect(x, y, kCell, kCell, p.v ? colour(*p.v) : kMissing, "#ffffff");
        const std::string label = p.v ? num(*p.v * 100, 0) + "%" : "n/a";
        const bool dark = p.v && *p.v > 0.5;
        svg.text(x + kCell / 2.0, y + kCell / 2.0 + 4, label, 11, "middle",
                 dark ? " fill=\"#ffffff\"" : " fill=\"#000000\"");
    }
    for (std::size_t k = 0; k < mv.size(); ++k) {
        svg.text(kLeft + kCell * (k + 0.5), kTop + grid_h + 16, std::to_string(mv[k]), 12);
    }
    for (std::size_t k = 0; k < nv.size(); ++k) {
        svg.text(kLeft - 8, kTop + kCell * (nv.size() - 1 - k + 0.5) + 4, std::to_string(nv[k]), 12, "end");
    }
    svg.text(kLeft + grid_w / 2.0, kTop + grid_h + 36, "m (objects)", 12);
    svg.text(22, kTop + grid_h / 2.0, "n (agents)", 12, "middle",
             " transform=\"rotate(-90 22 " + num(kTop + grid_h / 2.0) + ")\"");

    // Legend: gradient bar with 0 at the bottom.
    const double lx = kLeft + grid_w + 30, ly = kTop, lh = std::max(grid_h, 96);
    svg.raw("<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
            "<stop offset=\"0\" stop-color=\"" + colour(0) + "\"/><stop offset=\"1\" stop-color=\"" + colour(1) +
            "\"/></linearGradient></defs>\n");
    svg.raw("<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"16\" height=\"" + num(lh) +
            "\" fill=\"url(#scale)\" stroke=\"#000000\"/>\n");
    for (int k = 0; k <= 2; ++k) {
        svg.text(lx + 22, ly + lh - lh * k / 2.0 + 4, num(k / 2.0, 1), 11, "start");
    }
    return svg.finish();
}

std::string line_chart(Figure f, const CsvTable& t) {
    const auto points = cell_points(f, t);
    std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> series;  // m -> (n, v)
    std::set<std::size_t> ns;
    for (const auto& p : points) {
        ns.insert(p.n);
        if (p.v) series[p.m].emplace_back(p.n, *p.v);
    }
    constexpr int kLeft = 80, kTop = 50, kPlotW = 400, kPlotH = 260;
    const int width = kLeft + kPlotW + 110;
    const int height = kTop + kPlotH + 60;
    const double nmin = static_cast<double>(*ns.begin());
    const double nmax = static_cast<double>(*ns.rbegin());
    auto px = [&](double n) { return kLeft + (nmax > nmin ? (n - nmin) / (nmax - nmin) : 0.5) * kPlotW; };
    auto py = [&](double v) { return kTop + kPlotH - v * kPlotH; };

    Svg svg(width, height);
    svg.text(width / 2.0, 24, title(f), 14);
    value_axis(svg, kLeft, py(0), py(1));
    svg.line(kLeft, py(0), kLeft + kPlotW, py(0));
    for (std::size_t n : ns) {
        svg.line(px(n), py(0), px(n), py(0) + 4);
        svg.text(px(n), py(0) + 18, std::to_string(n), 11);
    }
    svg.text(kLeft + kPlotW / 2.0, py(0) + 40, "n (agents)", 12);

    std::size_t k = 0;
    for (auto& [m, pts] : series) {
        std::sort(pts.begin(), pts.end());
        const char* c = kPalette[k % kPalette.size()];
        std::string poly;
        for (const auto& [n, v] : pts) poly += (poly.empty() ? "" : " ") + num(px(n)) + ',' + num(py(v));
        svg.raw("<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"2\" points=\"" + poly +
                "\"/>\n");
        for (const auto& [n, v] : pts) {
            svg.raw("<circle cx=\"" + num(px(n)) + "\" cy=\"" + num(py(v)) + "\" r=\"3\" fill=\"" + c + "\"/>\n");
        }
        const double ly = kTop + 16.0 * static_cast<double>(k);
        svg.line(kLeft + kPlotW + 20, ly, kLeft + kPlotW + 40, ly, c);
        svg.text(kLeft + kPlotW + 46, ly + 4, "m = " + std::to_string(m), 11, "start");
        ++k;
    }
    return svg.finish();
}

// Weighted nearest-rank quantile over sorted (value, weight) pairs.
double quantile(const std::vector<std::pair<double, std::uint64_t>>& dist, std::uint64_t total, double q) {
    const auto rank = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(total))));
    std::uint64_t seen = 0;
    for (const auto& [v, w] : dist) {
        seen += w;
        if (seen >= rank) return v;
    }
    return dist.back().first;
}

std::string boxplot(const CsvTable& t) {
    const std::size_t cn = t.column("n");
    const std::size_t cf = t.column("fraction");
    const std::size_t cw = t.column("multiplicity");
    std::map<std::size_t, std::map<double, std::uint64_t>> groups;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto v = value(cell(t, r, cf), r + 2);
        if (!v) throw PlotError("row " + std::to_string(r + 2) + ": empty fraction");
        groups[integer(cell(t, r, cn), r + 2)][*v] += integer(cell(t, r, cw), r + 2);
    }
    constexpr int kLeft = 80, kTop = 50, kSlot = 70, kPlotH = 260;
    const int plot_w = kSlot * static_cast<int>(groups.size());
    const int width = std::max(kLeft + plot_w + 40, 480);
    const int height = kTop + kPlotH + 60;
    auto py = [&](double v) { return kTop + kPlotH - v * kPlotH; };

    Svg svg(width, height);
    svg.text(width / 2.0, 24, title(Figure::EnvyBox), 14);
    value_axis(svg, kLeft, py(0), py(1));
    svg.line(kLeft, py(0), kLeft + plot_w, py(0));
    std::size_t k = 0;
    for (const auto& [n, dist] : groups) {
        std::vector<std::pair<double, std::uint64_t>> sorted(dist.begin(), dist.end());
        std::uint64_t total = 0;
        for (const auto& [v, w] : sorted) total += w;
        if (total == 0) throw PlotError("n = " + std::to_string(n) + " has zero total multiplicity");
        const double lo = sorted.front().first, hi = sorted.back().first;
        const double q1 = quantile(sorted, total, 0.25), med = quantile(sorted, total, 0.5),
                     q3 = quantile(sorted, total, 0.75);
        const double cx = kLeft + kSlot * (k + 0.5);
        svg.line(cx, py(lo), cx, py(q1));
        svg.line(cx, py(q3), cx, py(hi));
        svg.line(cx - 10, py(lo), cx + 10, py(lo));
        svg.line(cx - 10, py(hi), cx + 10, py(hi));
        svg.rect(cx - 20, py(q3), 40, std::max(py(q1) - py(q3), 1.0), colour(0.35), "#000000");
        svg.line(cx - 20, py(med), cx + 20, py(med), "#d95f02");
        svg.text(cx, py(0) + 18, std::to_string(n), 11);
        ++k;
    }
    svg.text(kLeft + plot_w / 2.0, py(0) + 40, "n = m", 12);
    return svg.finish();
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw PlotError("missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            t.header = split(line);
            first = false;
        } else {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

std::optional<Figure> parse_figure(std::string_view name) {
    for (auto f : {Figure::SdDom, Figure::LdDom, Figure::EnvyHeat, Figure::EnvyBox, Figure::Manip, Figure::SdManip,
                   Figure::LdManip}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

std::string_view to_string(Figure figure) noexcept {
    switch (figure) {
        case Figure::SdDom: return "sd_dom";
        case Figure::LdDom: return "ld_dom";
        case Figure::EnvyHeat: return "envy_heat";
        case Figure::EnvyBox: return "envy_box";
        case Figure::Manip: return "manip";
        case Figure::SdManip: return "sd_manip";
        case Figure::LdManip: return "ld_manip";
    }
    return "?";
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"sd_dom", "ld_dom", "envy_heat", "envy_box",
                                                "manip",  "sd_manip", "ld_manip"};
    return names;
}

std::string render_figure(Figure figure, const CsvTable& table) {
    if (table.header.empty() || table.rows.empty()) throw PlotError("table has no data rows");
    switch (figure) {
        case Figure::SdDom:
        case Figure::LdDom: return line_chart(figure, table);
        case Figure::EnvyBox: return boxplot(table);
        default: return heatmap(figure, table);
    }
}

}  // namespace rsdps
