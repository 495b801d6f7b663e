// Copyright 2026 The cqedpairs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqed/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cqed {

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 60, kRight = 130, kTop = 40, kBottom = 50;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

void header(std::ostringstream& o, const std::string& title) {
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::vector<double>& x, const std::vector<Series>& series) {
    for (const auto& s : series)
        if (s.y.size() != x.size()) throw std::invalid_argument("svg_line_plot: series '" + s.label + "' length mismatch");
    std::ostringstream o;
    header(o, title);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    double x0 = x.empty() ? 0.0 : x.front(), x1 = x.empty() ? 1.0 : x.back();
    if (x1 == x0) x1 = x0 + 1.0;
    double y0 = 0.0, y1 = 1.0;
    for (const auto& s : series)
        for (double v : s.y)
            if (std::isfinite(v)) y1 = std::max(y1, v);
    auto px = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return kTop + ph - (v - y0) / (y1 - y0) * ph; };
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double yv = y0 + (y1 - y0) * k / 4.0, xv = x0 + (x1 - x0) * k / 4.0;
        o << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">"
          << num(yv) << "</text>\n";
        o << "<text x=\"" << num(px(xv)) << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">"
          << num(xv) << "</text>\n";
    }
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kColors[s % 6];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < x.size() && k < series[s].y.size(); ++k)
            if (std::isfinite(series[s].y[k])) o << num(px(x[k])) << ',' << num(py(series[s].y[k])) << ' ';
        o << "\"/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
        o << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30
          << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << kLeft + pw + 36 << "\" y=\"" << ly + 4 << "\">" << escape(series[s].label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string svg_heatmap(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& z) {
    if (z.size() != x.size() * y.size())
        throw std::invalid_argument("svg_heatmap: expected " + std::to_string(x.size() * y.size()) + " values");
    std::ostringstream o;
    header(o, title);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    const double cw = pw / static_cast<double>(std::max<std::size_t>(1, x.size()));
    const double ch = ph / static_cast<double>(std::max<std::size_t>(1, y.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double z_ij = z[i * y.size() + j];
            const double v = std::isnan(z_ij) ? 0.0 : std::clamp(z_ij, 0.0, 1.0);
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v)));
            o << "<rect x=\"" << num(kLeft + cw * static_cast<double>(i)) << "\" y=\""
              << num(kTop + ph - ch * static_cast<double>(j + 1)) << "\" width=\"" << num(cw + 0.5)
              << "\" height=\"" << num(ch + 0.5) << "\" fill=\"rgb(" << shade << ',' << shade << ",255)\"/>\n";
        }
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (!x.empty() && !y.empty()) {
        o << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 16 << "\">" << num(x.front()) << "</text>\n"
          << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"end\">"
          << num(x.back()) << "</text>\n"
          << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph << "\" text-anchor=\"end\">" << num(y.front())
          << "</text>\n"
          << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << num(y.back())
          << "</text>\n";
    }
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" transform=\"rotate(-90 16 " << kTop + ph / 2
      << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n"
      << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << kTop + 14 << "\">F: white 0, blue 1</text>\n"
      << "</svg>\n";
    return o.str();
}

}  // namespace cqed
