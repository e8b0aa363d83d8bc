#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsdps {

/// Input that cannot be plotted: empty table, missing column, bad value.
class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A comma-separated table with a header row. No quoting: none of the
/// tables this project writes need it.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name`; throws PlotError naming the column when absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
};

[[nodiscard]] CsvTable read_csv(std::istream& in);

enum class Figure { SdDom, LdDom, EnvyHeat, EnvyBox, Manip, SdManip, LdManip };

[[nodiscard]] std::optional<Figure> parse_figure(std::string_view name);
[[nodiscard]] std::string_view to_string(Figure figure) noexcept;
[[nodiscard]] const std::vector<std::string>& figure_names();

/// Renders a self-contained SVG document.
///
/// Heat figures (envy_heat, manip, sd_manip, ld_manip) draw one cell per
/// (n, m) row of the cell table. Colour runs linearly from #f7fbff at 0 to
/// #08306b at 1; cells without a value are grey. sd_dom and ld_dom draw the
/// fraction against n with one line per m. envy_box reads the distribution
/// table (n, fraction, multiplicity) and draws one box per n: quartiles by
/// the weighted nearest-rank rule, whiskers at the minimum and maximum.
[[nodiscard]] std::string render_figure(Figure figure, const CsvTable& table);

}  // namespace rsdps
