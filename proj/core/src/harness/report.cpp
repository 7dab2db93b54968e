#include "mixhom/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mixhom::harness {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::size_t Table::column(const std::string& col) const {
  const auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) throw std::out_of_range("table '" + name + "' has no column '" + col + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::optional<double> Report::find(const std::string& name) const {
  for (const auto& [k, v] : rows)
    if (k == name) return v;
  return std::nullopt;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += "\n";
  }
  return s;
}

std::string rows_csv(const Report& r) {
  std::string s = "name,value\n";
  for (const auto& [k, v] : r.rows) s += k + "," + format_number(v) + "\n";
  return s;
}

std::string render_svg(const Table& t, const PlotSpec& p) {
  constexpr double W = 640, H = 400, ml = 70, mr = 150, mt = 30, mb = 50;
  static constexpr const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const std::size_t xc = t.column(p.x);
  auto tx = [&](double v) { return p.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return p.log_y ? std::log10(v) : v; };
  auto usable = [](double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& yname : p.y) {
    const std::size_t yc = t.column(yname);
    for (const auto& row : t.rows) {
      if (!usable(row[xc], p.log_x) || !usable(row[yc], p.log_y)) continue;
      x0 = std::min(x0, tx(row[xc]));
      x1 = std::max(x1, tx(row[xc]));
      y0 = std::min(y0, ty(row[yc]));
      y1 = std::max(y1, ty(row[yc]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - y0) / (y1 - y0) * (H - mt - mb); };

  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", W, H, W,
                H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt_short(ml) + "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" +
       escape_xml(t.name) + "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n", ml, mt,
                W - ml - mr, H - mt - mb);
  s += buf;
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    const double lx = p.log_x ? std::pow(10.0, fx) : fx, ly = p.log_y ? std::pow(10.0, fy) : fy;
    const double sx = ml + (W - ml - mr) * i / 4.0, sy = H - mb - (H - mt - mb) * i / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">%s</text>\n",
                  sx, H - mb + 16, fmt_short(lx).c_str());
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">%s</text>\n",
                  ml - 6, sy + 4, fmt_short(ly).c_str());
    s += buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">%s%s</text>\n",
                ml + 0.5 * (W - ml - mr), H - 12, escape_xml(p.x).c_str(), p.log_x ? " (log)" : "");
  s += buf;
  for (std::size_t k = 0; k < p.y.size(); ++k) {
    const std::size_t yc = t.column(p.y[k]);
    const char* colour = colours[k % std::size(colours)];
    std::string pts;
    for (const auto& row : t.rows) {
      if (!usable(row[xc], p.log_x) || !usable(row[yc], p.log_y)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(row[xc]), py(row[yc]));
      pts += buf;
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", px(row[xc]),
                    py(row[yc]), colour);
      s += buf;
    }
    if (!pts.empty()) {
      pts.pop_back();
      s += std::string("<polyline fill=\"none\" stroke=\"") + colour + "\" points=\"" + pts + "\"/>\n";
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                  W - mr + 10, mt + 14.0 + 16.0 * static_cast<double>(k), colour, escape_xml(p.y[k]).c_str());
    s += buf;
  }
  s += "</svg>\n";
  return s;
}

std::string manifest_json(const Report& r, const Config& c, const std::vector<std::string>& files) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["experiment"] = r.experiment;
  j["config_hash"] = hex64(c.hash());
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.values()) cfg[k] = v;
  j["config"] = cfg;
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::vector<std::string> emit_report(const Report& r, const Config& c, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<std::string> files;
  write_file(dir / "rows.csv", rows_csv(r));
  files.push_back("rows.csv");
  for (const auto& t : r.tables) {
    write_file(dir / (t.name + ".csv"), to_csv(t));
    files.push_back(t.name + ".csv");
  }
  for (const auto& p : r.plots) {
    const auto it = std::find_if(r.tables.begin(), r.tables.end(), [&](const Table& t) { return t.name == p.table; });
    if (it == r.tables.end()) throw std::runtime_error("plot '" + p.name + "' refers to missing table '" + p.table + "'");
    write_file(dir / (p.name + ".svg"), render_svg(*it, p));
    files.push_back(p.name + ".svg");
  }
  write_file(dir / "manifest.json", manifest_json(r, c, files));
  files.push_back("manifest.json");
  return files;
}

}  // namespace mixhom::harness
