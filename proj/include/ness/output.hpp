#pragma once

// CSV, SVG heatmap and metadata emission.

#include "ness/config.hpp"
#include "ness/sweep.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ness {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
std::string format_optional(const std::optional<double>& x);

inline constexpr const char* kCsvHeader = "model,N,param1,param2,sz1,szN,g2,residual,status";

/// Header plus one line per row; failed fields are left empty.
std::string sweep_csv(const SweepResult& result);

struct Heatmap {
  std::string title;
  GridAxis x;  // columns
  GridAxis y;  // rows, max at the top
  std::vector<std::optional<double>> values;  // row-major over (ix, iy) like SweepResult
  int cell_size = 8;
};

/// Plot area is x.count x y.count cells of cell_size pixels, framed by fixed margins
/// for axis labels and the colour bar. Missing values are drawn grey.
std::string heatmap_svg(const Heatmap& map);

Heatmap sweep_heatmap(const SweepResult& result, const std::string& title,
                      const std::function<std::optional<double>(const SweepRow&)>& field, int cell_size);

/// Throws IoError when the file cannot be written. Creates parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// CSV, SVG heatmaps of sz1 and g2, and metadata.json in cfg.output.dir; returns the written paths.
std::vector<std::filesystem::path> emit_outputs(const SweepResult& result, const SweepConfig& cfg);

}  // namespace ness
