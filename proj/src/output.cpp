#include "ness/output.hpp"

#include "ness/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <system_error>

namespace ness {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 90;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 50;

struct Rgb {
  double r, g, b;
};

// viridis samples
constexpr std::array<Rgb, 5> kStops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * (kStops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), kStops.size() - 2);
  const double f = pos - static_cast<double>(i);
  auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(kStops[i].r, kStops[i + 1].r), mix(kStops[i].g, kStops[i + 1].g),
                mix(kStops[i].b, kStops[i + 1].b));
  return buf;
}

std::string short_number(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

std::string sweep_csv(const SweepResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  const std::string model(to_string(result.model));
  const std::string n = std::to_string(result.n_sites);
  for (const SweepRow& r : result.rows) {
    out += model + ',' + n + ',' + format_double(r.param1) + ',' + format_double(r.param2) + ',' +
           format_optional(r.sz1) + ',' + format_optional(r.szn) + ',' + format_optional(r.g2) + ',' +
           format_optional(r.residual) + ',' + std::string(to_string(r.status)) + '\n';
  }
  return out;
}

Heatmap sweep_heatmap(const SweepResult& result, const std::string& title,
                      const std::function<std::optional<double>(const SweepRow&)>& field, int cell_size) {
  Heatmap map;
  map.title = title;
  map.x = result.param1;
  map.y = result.param2;
  map.cell_size = cell_size;
  map.values.reserve(result.rows.size());
  for (const SweepRow& r : result.rows) map.values.push_back(field(r));
  return map;
}

std::string heatmap_svg(const Heatmap& map) {
  const int nx = map.x.count;
  const int ny = map.y.count;
  const int cs = map.cell_size;
  const int pw = nx * cs;
  const int ph = ny * cs;
  const int width = kMarginLeft + pw + kMarginRight;
  const int height = kMarginTop + ph + kMarginBottom;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : map.values) {
    if (v && std::isfinite(*v)) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  if (!(lo <= hi)) lo = hi = 0.0;
  const double span = hi > lo ? hi - lo : 1.0;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kMarginLeft + pw / 2 << "\" y=\"18\" text-anchor=\"middle\">" << escape(map.title)
     << "</text>\n";
  os << "<g id=\"plot\" transform=\"translate(" << kMarginLeft << ',' << kMarginTop << ")\" shape-rendering=\"crispEdges\">\n";
  os << "<rect width=\"" << pw << "\" height=\"" << ph << "\" fill=\"#bbbbbb\"/>\n";
  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) {
      const auto& v = map.values[static_cast<std::size_t>(ix) * ny + iy];
      if (!v || !std::isfinite(*v)) continue;
      os << "<rect x=\"" << ix * cs << "\" y=\"" << (ny - 1 - iy) * cs << "\" width=\"" << cs << "\" height=\"" << cs
         << "\" fill=\"" << colour((*v - lo) / span) << "\"/>\n";
    }
  }
  os << "</g>\n";

  // axes
  const int x0 = kMarginLeft;
  const int y1 = kMarginTop + ph;
  os << "<text x=\"" << x0 << "\" y=\"" << y1 + 16 << "\" text-anchor=\"start\">" << short_number(map.x.min)
     << "</text>\n";
  os << "<text x=\"" << x0 + pw << "\" y=\"" << y1 + 16 << "\" text-anchor=\"end\">" << short_number(map.x.max)
     << "</text>\n";
  os << "<text x=\"" << x0 + pw / 2 << "\" y=\"" << y1 + 36 << "\" text-anchor=\"middle\">" << escape(map.x.name)
     << "</text>\n";
  os << "<text x=\"" << x0 - 6 << "\" y=\"" << y1 << "\" text-anchor=\"end\">" << short_number(map.y.min)
     << "</text>\n";
  os << "<text x=\"" << x0 - 6 << "\" y=\"" << kMarginTop + 10 << "\" text-anchor=\"end\">"
     << short_number(map.y.max) << "</text>\n";
  os << "<text x=\"" << 16 << "\" y=\"" << kMarginTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kMarginTop + ph / 2 << ")\">" << escape(map.y.name) << "</text>\n";

  // colour bar
  const int bx = x0 + pw + 20;
  const int steps = 32;
  for (int s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) / (steps - 1);
    const double top = kMarginTop + ph * (1.0 - static_cast<double>(s + 1) / steps);
    os << "<rect x=\"" << bx << "\" y=\"" << short_number(top) << "\" width=\"14\" height=\""
       << short_number(static_cast<double>(ph) / steps + 0.5) << "\" fill=\"" << colour(t) << "\"/>\n";
  }
  os << "<text x=\"" << bx + 18 << "\" y=\"" << kMarginTop + 10 << "\">" << short_number(hi) << "</text>\n";
  os << "<text x=\"" << bx + 18 << "\" y=\"" << y1 << "\">" << short_number(lo) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> emit_outputs(const SweepResult& result, const SweepConfig& cfg) {
  if (result.rows.empty()) throw SpecificationError("nothing to emit: empty sweep result");
  const std::filesystem::path dir(cfg.output.dir);
  const std::string& stem = cfg.output.stem;
  std::vector<std::filesystem::path> written;

  if (cfg.output.csv) {
    written.push_back(dir / (stem + ".csv"));
    write_text_file(written.back(), sweep_csv(result));
  }
  if (cfg.output.svg) {
    const std::string tag = std::string(to_string(result.model)) + " N=" + std::to_string(result.n_sites);
    written.push_back(dir / (stem + "_sz1.svg"));
    write_text_file(written.back(),
                    heatmap_svg(sweep_heatmap(
                        result, "<sz_1> " + tag, [](const SweepRow& r) { return r.sz1; }, cfg.output.cell_size)));
    written.push_back(dir / (stem + "_g2.svg"));
    write_text_file(written.back(),
                    heatmap_svg(sweep_heatmap(
                        result, "g2(1,N) " + tag, [](const SweepRow& r) { return r.g2; }, cfg.output.cell_size)));
  }

  std::map<std::string, int> counts;
  for (const SweepRow& r : result.rows) ++counts[std::string(to_string(r.status))];
  nlohmann::json meta;
  meta["config"] = config_to_json(cfg);
  meta["points"] = result.rows.size();
  meta["status_counts"] = counts;
  if (result.model == ModelKind::ThreeSpin && cfg.auxiliary.enabled) {
    meta["three_spin_end_terms"] =
        "three-spin terms touching an auxiliary site are scaled by end_bond_scale like the two-spin end bonds "
        "(a modelling choice, not fixed by the physics)";
  }
  written.push_back(dir / (stem + "_metadata.json"));
  write_text_file(written.back(), meta.dump(2) + "\n");
  return written;
}

}  // namespace ness
