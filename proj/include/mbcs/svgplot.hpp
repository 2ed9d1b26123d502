#pragma once

#include <optional>
#include <string>

#include "mbcs/harness.hpp"

// Deterministic SVG line charts over result tables: per-cell medians
// with interquartile bands, solid lines for the LP estimator, dash-dot
// for AdaBoost, one color per distribution. Rendering the same table
// twice yields identical bytes.

namespace mbcs {

struct PanelSpec {
    std::string name;
    std::string x_field = "n";               // "n" or "n_corrupt"
    std::string y_metric = "prediction_error";  // or "margin"
    bool x_log = true;
    bool y_log = true;
    std::optional<std::size_t> filter_corrupt;  // keep only this corruption count
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Panel layouts matching the builtin plans: figure1-left,
/// figure1-right, figure2-left, figure2-right, smoke. Throws
/// std::invalid_argument on unknown names.
PanelSpec panel_spec(const std::string& name);

/// Renders the panel over the table's ok rows. Throws
/// std::invalid_argument when the filter matches nothing, listing what
/// the table does contain. Points whose median is NaN, or nonpositive
/// on a log axis, are dropped.
std::string render_plot(const ResultTable& table, const PanelSpec& panel);

}  // namespace mbcs
