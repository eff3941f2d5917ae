#include "graphssr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace graphssr {

namespace {

std::string ramp(double t) {
  // dark blue -> light yellow
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(20 + t * (250 - 20)));
  const int g = static_cast<int>(std::lround(30 + t * (235 - 30)));
  const int b = static_cast<int>(std::lround(90 + t * (140 - 90)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string heatmap_svg(const SlopeSurface& s, double alpha, const std::string& title) {
  const double top = std::max(2.0, 4.0 * alpha);
  const std::size_t ne = s.eps.size();
  const std::size_t ng = s.gamma.size();
  const double cell = 10.0;
  const double left = 60.0;
  const double head = 30.0;
  const double width = left + cell * static_cast<double>(ng) + 20.0;
  const double height = head + cell * static_cast<double>(ne) + 40.0;

  // x grows with log10(gamma) decreasing, y grows with log10(eps) decreasing
  auto lg = [](double v) { return std::log10(v); };
  const double g_hi = lg(*std::max_element(s.gamma.begin(), s.gamma.end()));
  const double g_lo = lg(*std::min_element(s.gamma.begin(), s.gamma.end()));
  const double e_hi = lg(*std::max_element(s.eps.begin(), s.eps.end()));
  const double e_lo = lg(*std::min_element(s.eps.begin(), s.eps.end()));
  const double span_x = cell * static_cast<double>(ng - 1);
  const double span_y = cell * static_cast<double>(ne - 1);
  auto px = [&](double lgam) { return left + cell / 2 + (g_hi - lgam) / std::max(g_hi - g_lo, 1e-12) * span_x; };
  auto py = [&](double leps) { return head + cell / 2 + (e_hi - leps) / std::max(e_hi - e_lo, 1e-12) * span_y; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\">\n";
  o << "<text x=\"" << left << "\" y=\"18\" font-size=\"12\">" << title << "</text>\n";
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      const double v = s.slope(static_cast<Index>(i), static_cast<Index>(j));
      o << "<rect x=\"" << px(lg(s.gamma[j])) - cell / 2 << "\" y=\""
        << py(lg(s.eps[i])) - cell / 2 << "\" width=\"" << cell << "\" height=\"" << cell
        << "\" fill=\"" << ramp(v / top) << "\"/>\n";
    }
  }
  o << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  const double expo = 2.0 / std::min(1.0, alpha);
  for (int k = 0; k <= 100; ++k) {
    const double lgam = g_hi + (g_lo - g_hi) * k / 100.0;
    const double leps = expo * lgam;
    if (leps < e_lo || leps > e_hi) continue;
    o << px(lgam) << ',' << py(leps) << ' ';
  }
  o << "\"/>\n";
  o << "<text x=\"" << left << "\" y=\"" << height - 20 << "\" font-size=\"10\">log10 gamma "
    << g_hi << " .. " << g_lo << ", log10 eps " << e_hi << " .. " << e_lo << ", colour 0 .. "
    << top << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

void write_heatmap_svg(const std::filesystem::path& path, const SlopeSurface& s, double alpha,
                       const std::string& title) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << heatmap_svg(s, alpha, title);
}

}  // namespace graphssr
