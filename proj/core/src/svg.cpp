#include "mlosc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlosc/csv.hpp"

namespace mlosc {

namespace {

constexpr double kW = 800, kH = 600;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50;

struct LogBox {
  double x0, x1, y0, y1;
  double px(double x) const { return kL + (std::log10(x) - x0) / (x1 - x0) * (kW - kL - kR); }
  double py(double y) const {
    return kH - kB - (std::log10(y) - y0) / (y1 - y0) * (kH - kT - kB);
  }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const LogBox& box,
                     const char* style) {
  std::string s = "<polyline fill=\"none\" ";
  s += style;
  s += " points=\"";
  bool first = true;
  for (auto [x, y] : pts) {
    if (!(x > 0) || !(y > 0)) continue;
    if (!first) s += ' ';
    s += fmt_double(std::round(box.px(x) * 100) / 100) + "," +
         fmt_double(std::round(box.py(y) * 100) / 100);
    first = false;
  }
  s += "\"/>\n";
  return s;
}

}  // namespace

std::string svg_loglog(const std::vector<std::pair<double, double>>& data,
                       const std::vector<std::pair<double, double>>& envelope,
                       const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0;
  double ymin = xmin, ymax = 0;
  auto scan = [&](const std::vector<std::pair<double, double>>& pts) {
    for (auto [x, y] : pts) {
      if (!(x > 0) || !(y > 0)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  };
  scan(data);
  scan(envelope);
  if (!(xmax > 0) || !(ymax > 0)) {
    xmin = ymin = 0.1;
    xmax = ymax = 10;
  }
  LogBox box{std::floor(std::log10(xmin)), std::ceil(std::log10(xmax) + 1e-9),
             std::floor(std::log10(ymin)), std::ceil(std::log10(ymax) + 1e-9)};
  if (box.x1 <= box.x0) box.x1 = box.x0 + 1;
  if (box.y1 <= box.y0) box.y1 = box.y0 + 1;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + title + "</text>\n";
  // decade grid
  for (int d = static_cast<int>(box.x0); d <= static_cast<int>(box.x1); ++d) {
    double px = box.px(std::pow(10.0, d));
    s += "<line x1=\"" + fmt_double(px) + "\" y1=\"" + fmt_double(kT) + "\" x2=\"" +
         fmt_double(px) + "\" y2=\"" + fmt_double(kH - kB) +
         "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fmt_double(px) + "\" y=\"" + fmt_double(kH - kB + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" +
         std::to_string(d) + "</text>\n";
  }
  for (int d = static_cast<int>(box.y0); d <= static_cast<int>(box.y1); ++d) {
    double py = box.py(std::pow(10.0, d));
    s += "<line x1=\"" + fmt_double(kL) + "\" y1=\"" + fmt_double(py) + "\" x2=\"" +
         fmt_double(kW - kR) + "\" y2=\"" + fmt_double(py) +
         "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fmt_double(kL - 8) + "\" y=\"" + fmt_double(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" +
         std::to_string(d) + "</text>\n";
  }
  s += "<rect x=\"" + fmt_double(kL) + "\" y=\"" + fmt_double(kT) + "\" width=\"" +
       fmt_double(kW - kL - kR) + "\" height=\"" + fmt_double(kH - kT - kB) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!envelope.empty())
    s += polyline(envelope, box, "stroke=\"#cc3333\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
  s += polyline(data, box, "stroke=\"#3355cc\" stroke-width=\"2\"");
  s += "</svg>\n";
  return s;
}

}  // namespace mlosc
