#include "quasifrag/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace quasifrag {

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SpecError("atomic_write: cannot open " + tmp.string());
    out << content;
    if (!out.flush()) throw SpecError("atomic_write: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw SpecError("Table: row width " + std::to_string(row.size()) +
                    " does not match " + std::to_string(columns.size()) +
                    " columns");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << columns[c] << (c + 1 < columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << row[c] << (c + 1 < row.size() ? "," : "");
    os << "\n";
  }
  return os.str();
}

std::string Table::to_json() const {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << "  {";
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << "\"" << columns[c] << "\": \"" << rows[r][c] << "\"";
      if (c + 1 < columns.size()) os << ", ";
    }
    os << "}" << (r + 1 < rows.size() ? "," : "") << "\n";
  }
  os << "]\n";
  return os.str();
}

namespace {
std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
}  // namespace

std::string plot_svg(const std::vector<Series>& series,
                     const std::string& x_label, const std::string& y_label) {
  if (series.empty()) throw SpecError("plot_svg: no curves");
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const Series& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw SpecError("plot_svg: empty or mismatched series");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        throw SpecError("plot_svg: non-finite data rejected");
      if (first) { xmin = xmax = s.x[i]; ymin = ymax = s.y[i]; first = false; }
      xmin = std::min(xmin, s.x[i]); xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]); ymax = std::max(ymax, s.y[i]);
    }
  }
  if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
  if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }
  const double W = 640, H = 440, ml = 70, mr = 160, mt = 20, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
     << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  // Ticks: 5 per axis, value labels in %.12g-compatible short form.
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    os << "<line x1=\"" << fmt2(px(xv)) << "\" y1=\"" << mt + ph << "\" x2=\""
       << fmt2(px(xv)) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << fmt2(px(xv)) << "\" y=\"" << mt + ph + 18
       << "\" font-size=\"11\" text-anchor=\"middle\">" << format_g12(xv).substr(0, 6)
       << "</text>\n"
       << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt2(py(yv)) << "\" x2=\"" << ml
       << "\" y2=\"" << fmt2(py(yv)) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << fmt2(py(yv) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << format_g12(yv).substr(0, 6)
       << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
     << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n"
     << "<text x=\"16\" y=\"" << mt + ph / 2
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << mt + ph / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[si].x.size(); ++i) {
      if (i) os << " ";
      os << fmt2(px(series[si].x[i])) << "," << fmt2(py(series[si].y[i]));
    }
    os << "\"/>\n";
    const std::string label = series[si].label.empty()
                                  ? "series " + std::to_string(si + 1)
                                  : series[si].label;
    const double ly = mt + 16 + 18 * static_cast<double>(si);
    os << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << fmt2(ly - 4) << "\" x2=\""
       << ml + pw + 34 << "\" y2=\"" << fmt2(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"1.5\"/>\n"
       << "<text x=\"" << ml + pw + 40 << "\" y=\"" << fmt2(ly)
       << "\" font-size=\"12\">" << label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace quasifrag
