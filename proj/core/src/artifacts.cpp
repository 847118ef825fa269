#include "cfmimo/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cfmimo/version.hpp"

namespace cfmimo::io {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings on any platform
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_cdf_csv(const std::string& path, const mc::CdfSummary& cdf) {
  auto out = open_out(path);
  out << "se_bits_per_hz,cdf_probability\n";
  for (std::size_t i = 0; i < cdf.count(); ++i) {
    out << fmt(cdf.sorted[i]) << ',' << fmt(cdf.probability(i), "%.9g") << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_summary_csv(const std::string& path,
                       std::span<const mc::SchemeCurve> curves) {
  auto out = open_out(path);
  out << "scheme,power_mode,percentile_05,percentile_50,mean,"
         "active_power_fraction,samples\n";
  for (const auto& c : curves) {
    out << to_string(c.scheme) << ',' << to_string(c.mode) << ','
        << fmt(c.cdf.percentile_05) << ',' << fmt(c.cdf.percentile_50) << ','
        << fmt(c.cdf.mean) << ',' << fmt(c.active_power_fraction) << ','
        << c.cdf.count() << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_manifest(const std::string& path, const SystemConfig& cfg,
                    std::span<const std::string> outputs) {
  auto out = open_out(path);
  char stamp[64] = "unknown";
  const std::time_t now = std::time(nullptr);
  if (std::tm tm{}; gmtime_r(&now, &tm) != nullptr) {
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  }
  out << "# cfsim run manifest\n"
      << "# version: " << kVersion << '\n'
      << "# created: " << stamp << '\n'
      << "# power normalization: P_d applied per active subcarrier stream; "
         "noise integrated over "
      << (cfg.noise_bandwidth == NoiseBandwidthMode::kSubcarrier
              ? "one subcarrier spacing"
              : "the full signal band")
      << " (sigma_z^2 = " << fmt(cfg.noise_power_w(), "%.9g")
      << " W, gamma_t = " << fmt(cfg.gamma_t(), "%.9g") << ")\n";
  for (const auto& o : outputs) out << "# output: " << o << '\n';
  write_config(out, cfg);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

CdfPoints read_cdf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CDF file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("se_bits_per_hz,cdf_probability", 0) != 0) {
    throw std::runtime_error("'" + path + "' is not a cdf csv (bad header)");
  }
  CdfPoints points;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'se,probability'");
    }
    points.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
  }
  if (points.empty()) {
    throw std::runtime_error("'" + path + "' contains no samples");
  }
  return points;
}

namespace {

// Thins a curve to at most max_points while keeping the endpoints.
CdfPoints thin(const CdfPoints& pts, std::size_t max_points) {
  if (pts.size() <= max_points) return pts;
  CdfPoints out;
  out.reserve(max_points);
  const double step =
      static_cast<double>(pts.size() - 1) / static_cast<double>(max_points - 1);
  for (std::size_t i = 0; i < max_points; ++i) {
    out.push_back(pts[static_cast<std::size_t>(std::lround(i * step))]);
  }
  out.back() = pts.back();
  return out;
}

}  // namespace

void render_cdf_svg(const std::string& path,
                    std::span<const PlotCurve> curves) {
  if (curves.empty()) throw std::invalid_argument("plot: no curves");
  double max_se = 0.0;
  for (const auto& c : curves) {
    if (c.points.empty()) throw std::invalid_argument("plot: empty curve");
    max_se = std::max(max_se, c.points.back().first);
  }
  max_se = std::max(1.0, std::ceil(max_se));

  const double w = 840.0, h = 560.0;
  const double ml = 70.0, mr = 24.0, mt = 24.0, mb = 56.0;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto sx = [&](double se) { return ml + pw * se / max_se; };
  auto sy = [&](double p) { return mt + ph * (1.0 - p); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // grid and axis labels
  out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  const int x_ticks = std::min(16, static_cast<int>(max_se));
  for (int t = 0; t <= x_ticks; ++t) {
    const double se = max_se * t / x_ticks;
    out << "<line x1=\"" << sx(se) << "\" y1=\"" << sy(0) << "\" x2=\""
        << sx(se) << "\" y2=\"" << sy(1) << "\"/>\n";
  }
  for (int t = 0; t <= 10; ++t) {
    out << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(t / 10.0) << "\" x2=\""
        << sx(max_se) << "\" y2=\"" << sy(t / 10.0) << "\"/>\n";
  }
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (int t = 0; t <= x_ticks; ++t) {
    const double se = max_se * t / x_ticks;
    out << "<text x=\"" << sx(se) << "\" y=\"" << h - mb + 18.0
        << "\" text-anchor=\"middle\">" << fmt(se, "%g") << "</text>\n";
  }
  for (int t = 0; t <= 10; ++t) {
    out << "<text x=\"" << ml - 8.0 << "\" y=\"" << sy(t / 10.0) + 4.0
        << "\" text-anchor=\"end\">" << fmt(t / 10.0, "%g") << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 12.0
      << "\" text-anchor=\"middle\">spectral efficiency [bit/s/Hz]</text>\n"
      << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << mt + ph / 2
      << ")\">cumulative probability</text>\n</g>\n";

  // curves, drawn as CDF steps
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto pts = thin(curves[c].points, 1200);
    std::ostringstream d;
    d << "M " << sx(pts.front().first) << ' ' << sy(0.0);
    double prev_p = 0.0;
    for (const auto& [se, p] : pts) {
      d << " L " << sx(se) << ' ' << sy(prev_p) << " L " << sx(se) << ' '
        << sy(p);
      prev_p = p;
    }
    out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\""
        << palette[c % 6] << "\" stroke-width=\"1.8\"/>\n";
  }

  // legend
  out << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double y = mt + 18.0 + 20.0 * static_cast<double>(c);
    out << "<line x1=\"" << ml + 12.0 << "\" y1=\"" << y << "\" x2=\""
        << ml + 44.0 << "\" y2=\"" << y << "\" stroke=\"" << palette[c % 6]
        << "\" stroke-width=\"2.5\"/>\n"
        << "<text x=\"" << ml + 50.0 << "\" y=\"" << y + 4.0 << "\">"
        << curves[c].label << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace cfmimo::io
