#pragma once

// CSV, SVG and metadata writers. Numbers are printed in the shortest decimal
// form that reads back to the same double.

#include <filesystem>
#include <string>
#include <vector>

#include "wavelab/energy.hpp"

namespace wavelab {

std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string to_csv(const CsvTable& table);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Throws InvalidData on a missing file or ragged rows.
CsvTable read_csv(const std::filesystem::path& path);

/// Long format: t,p,E_p,calE_p,dissipation,overbar, traces in the given order.
CsvTable energy_trace_table(const std::vector<EnergyTrace>& traces);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line chart with a log-scale y axis; nonpositive y values are dropped.
/// Throws InvalidData when no series has a positive point.
std::string svg_log_plot(const std::vector<PlotSeries>& series, const std::string& x_label,
                         const std::string& y_label);

/// Groups the E_p column of an energy-trace table by p.
std::vector<PlotSeries> energy_series_from_table(const CsvTable& table);

}  // namespace wavelab
