#include "wavelab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace wavelab {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(ErrorKind::InvalidData, "cannot format number");
  return std::string(buf, ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw Error(ErrorKind::InvalidData, "row width does not match header");
  rows.push_back(std::move(row));
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidData, "not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  append_line(out, table.header);
  for (const auto& row : table.rows) append_line(out, row);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidData, "cannot open " + path.string() + " for writing");
  out << text;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidData, "cannot read " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::InvalidData, path.string() + " is empty");
  table.header = split_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.add_row(split_line(line));
  }
  return table;
}

CsvTable energy_trace_table(const std::vector<EnergyTrace>& traces) {
  CsvTable table;
  table.header = {"t", "p", "E_p", "calE_p", "dissipation", "overbar"};
  for (const auto& tr : traces) {
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      table.add_row({format_double(tr.times[k]), format_double(tr.p), format_double(tr.E_p[k]),
                     format_double(tr.calE_p[k]), format_double(tr.dissipation[k]),
                     format_double(tr.overbar[k])});
    }
  }
  return table;
}

std::vector<PlotSeries> energy_series_from_table(const CsvTable& table) {
  const auto col = [&](const std::string& name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) throw Error(ErrorKind::InvalidData, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - table.header.begin());
  };
  const auto ct = col("t"), cp = col("p"), ce = col("E_p");
  std::vector<PlotSeries> series;
  std::map<std::string, std::size_t> index;
  for (const auto& row : table.rows) {
    const auto& key = row[cp];
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, series.size()).first;
      series.push_back({"p = " + key, {}, {}});
    }
    series[it->second].x.push_back(parse_cell(row[ct]));
    series[it->second].y.push_back(parse_cell(row[ce]));
  }
  return series;
}

std::string svg_log_plot(const std::vector<PlotSeries>& series, const std::string& x_label,
                         const std::string& y_label) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 20, B = 50;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) throw Error(ErrorKind::InvalidData, "nothing to plot");
  if (xmax == xmin) xmax = xmin + 1.0;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax == ymin) ymax = ymin + 1.0;

  const auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  const auto py = [&](double ly) { return H - B - (ly - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  const int decades = static_cast<int>(ymax - ymin);
  const int step = std::max(1, decades / 8);
  for (int d = 0; d <= decades; d += step) {
    const double y = py(ymin + d);
    svg << "<text x=\"" << L - 8 << "\" y=\"" << y + 4 << "\" font-size=\"11\" text-anchor=\"end\">1e"
        << static_cast<int>(ymin) + d << "</text>\n";
    svg << "<line x1=\"" << L - 4 << "\" y1=\"" << y << "\" x2=\"" << L << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double x = xmin + (xmax - xmin) * k / 4.0;
    svg << "<text x=\"" << px(x) << "\" y=\"" << H - B + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << format_double(std::round(x * 1000.0) / 1000.0) << "</text>\n";
  }
  svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" font-size=\"12\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  svg << "<text x=\"14\" y=\"" << (T + H - B) / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << (T + H - B) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 6];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.y[i] > 0.0)) continue;
      svg << px(s.x[i]) << ',' << py(std::log10(s.y[i])) << ' ';
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << W - R - 80 << "\" y=\"" << T + 14 * (k + 1) << "\" font-size=\"11\" fill=\"" << color
        << "\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace wavelab
