#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace pwlab::svg {

// Minimal SVG canvas with a mapped data->pixel coordinate frame. Keeps
// plots dependency-free and diffable.
class Plot {
  public:
    Plot(int width, int height, std::string title, std::string xlabel, std::string ylabel)
        : w_(width), h_(height), title_(std::move(title)), xlabel_(std::move(xlabel)),
          ylabel_(std::move(ylabel)) {}

    void set_range(double x0, double x1, double y0, double y1) {
        x0_ = x0;
        x1_ = x1 > x0 ? x1 : x0 + 1.0;
        y0_ = y0;
        y1_ = y1 > y0 ? y1 : y0 + 1.0;
    }

    double px(double x) const { return ml_ + (x - x0_) / (x1_ - x0_) * (w_ - ml_ - mr_); }
    double py(double y) const { return h_ - mb_ - (y - y0_) / (y1_ - y0_) * (h_ - mt_ - mb_); }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  double width = 1.0, double opacity = 1.0) {
        if (pts.size() < 2) return;
        body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
              << "\" stroke-opacity=\"" << opacity << "\" points=\"";
        for (const auto& [x, y] : pts) body_ << fmt(px(x)) << "," << fmt(py(y)) << " ";
        body_ << "\"/>\n";
    }

    void band(const std::vector<double>& xs, const std::vector<double>& lo,
              const std::vector<double>& hi, const std::string& color) {
        if (xs.size() < 2) return;
        body_ << "<polygon fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i)
            body_ << fmt(px(xs[i])) << "," << fmt(py(hi[i])) << " ";
        for (std::size_t i = xs.size(); i-- > 0;)
            body_ << fmt(px(xs[i])) << "," << fmt(py(lo[i])) << " ";
        body_ << "\"/>\n";
    }

    void marker(double x, double y, const std::string& color, double r = 3.0) {
        body_ << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"" << r
              << "\" fill=\"" << color << "\"/>\n";
    }

    void bar(double x_center, double width_data, double value, const std::string& color,
             const std::string& label = "") {
        const double xl = px(x_center - width_data / 2), xr = px(x_center + width_data / 2);
        const double yb = py(std::max(0.0, y0_)), yv = py(value);
        body_ << "<rect x=\"" << fmt(xl) << "\" y=\"" << fmt(std::min(yb, yv)) << "\" width=\""
              << fmt(xr - xl) << "\" height=\"" << fmt(std::abs(yb - yv)) << "\" fill=\"" << color
              << "\"/>\n";
        if (!label.empty())
            body_ << "<text x=\"" << fmt((xl + xr) / 2) << "\" y=\"" << fmt(py(y0_) + 14)
                  << "\" font-size=\"10\" text-anchor=\"middle\">" << label << "</text>\n";
    }

    void hline(double y, const std::string& color, double width = 0.7) {
        body_ << "<line x1=\"" << fmt(px(x0_)) << "\" y1=\"" << fmt(py(y)) << "\" x2=\""
              << fmt(px(x1_)) << "\" y2=\"" << fmt(py(y)) << "\" stroke=\"" << color
              << "\" stroke-width=\"" << width << "\" stroke-dasharray=\"4 3\"/>\n";
    }

    std::string render() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
            << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n";
        out << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"white\"/>\n";
        // frame
        out << "<rect x=\"" << ml_ << "\" y=\"" << mt_ << "\" width=\"" << w_ - ml_ - mr_
            << "\" height=\"" << h_ - mt_ - mb_ << "\" fill=\"none\" stroke=\"black\"/>\n";
        out << "<text x=\"" << w_ / 2 << "\" y=\"16\" font-size=\"13\" text-anchor=\"middle\">"
            << title_ << "</text>\n";
        out << "<text x=\"" << w_ / 2 << "\" y=\"" << h_ - 6
            << "\" font-size=\"11\" text-anchor=\"middle\">" << xlabel_ << "</text>\n";
        out << "<text x=\"12\" y=\"" << h_ / 2
            << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 12 " << h_ / 2
            << ")\">" << ylabel_ << "</text>\n";
        // tick labels at the corners of the range
        out << "<text x=\"" << ml_ << "\" y=\"" << h_ - mb_ + 14 << "\" font-size=\"10\">"
            << fmt(x0_) << "</text>\n";
        out << "<text x=\"" << w_ - mr_ << "\" y=\"" << h_ - mb_ + 14
            << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(x1_) << "</text>\n";
        out << "<text x=\"" << ml_ - 4 << "\" y=\"" << h_ - mb_
            << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(y0_) << "</text>\n";
        out << "<text x=\"" << ml_ - 4 << "\" y=\"" << mt_ + 10
            << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(y1_) << "</text>\n";
        out << body_.str();
        out << "</svg>\n";
        return out.str();
    }

  private:
    static std::string fmt(double v) {
        std::ostringstream s;
        s.precision(6);
        s << v;
        return s.str();
    }

    int w_, h_;
    std::string title_, xlabel_, ylabel_;
    double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
    int ml_ = 56, mr_ = 16, mt_ = 28, mb_ = 40;
    std::ostringstream body_;
};

}  // namespace pwlab::svg
