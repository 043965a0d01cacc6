#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "peakpaths/cli/table.hpp"

namespace peakpaths::cli {

/// Self-contained 800×600 line plot with linear axes.
class SvgPlot {
public:
    static constexpr double width = 800.0;
    static constexpr double height = 600.0;
    static constexpr double margin = 60.0;

    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void set_range(double x_lo, double x_hi, double y_lo, double y_hi) {
        if (!(x_hi > x_lo)) {
            x_lo -= 0.5;
            x_hi += 0.5;
        }
        if (!(y_hi > y_lo)) {
            y_lo -= 0.5;
            y_hi += 0.5;
        }
        x_lo_ = x_lo;
        x_hi_ = x_hi;
        y_lo_ = y_lo;
        y_hi_ = y_hi;
    }

    /// Range covering the given points, with y clamped to [y_floor, y_ceiling].
    void fit(const std::vector<std::pair<double, double>>& pts,
             double y_floor = -std::numeric_limits<double>::infinity(),
             double y_ceiling = std::numeric_limits<double>::infinity()) {
        double xl = INFINITY, xh = -INFINITY, yl = INFINITY, yh = -INFINITY;
        for (auto [x, y] : pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xl = std::min(xl, x);
            xh = std::max(xh, x);
            yl = std::min(yl, y);
            yh = std::max(yh, y);
        }
        if (!std::isfinite(xl)) {
            xl = 0.0;
            xh = 1.0;
            yl = 0.0;
            yh = 1.0;
        }
        set_range(xl, xh, std::max(yl, y_floor), std::min(yh, y_ceiling));
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& id,
                  const std::string& color = "#1f4e9c") {
        std::ostringstream os;
        os << "<polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (auto [x, y] : pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            os << (first ? "" : " ") << format_number(px(x)) << ',' << format_number(py(clamp_y(y)));
            first = false;
        }
        os << "\"/>";
        body_.push_back(os.str());
    }

    void vertical_line(double x, const std::string& id) {
        line(x, y_lo_, x, y_hi_, id, "#888888", true);
    }

    void horizontal_line(double y, const std::string& id) {
        line(x_lo_, y, x_hi_, y, id, "#888888", true);
    }

    void arrow(double x0, double y0, double x1, double y1) {
        std::ostringstream os;
        os << "<line class=\"arrow\" x1=\"" << format_number(px(x0)) << "\" y1=\"" << format_number(py(y0))
           << "\" x2=\"" << format_number(px(x1)) << "\" y2=\"" << format_number(py(y1))
           << "\" stroke=\"#333333\" stroke-width=\"1\" marker-end=\"url(#head)\"/>";
        body_.push_back(os.str());
    }

    std::string str() const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
              "viewBox=\"0 0 800 600\">\n"
           << "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
              "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#333333\"/></marker></defs>\n"
           << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
           << "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
              "font-size=\"16\">"
           << escape(title_) << "</text>\n";
        axes(os);
        for (const auto& element : body_) os << element << '\n';
        os << "</svg>\n";
        return os.str();
    }

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }

private:
    double px(double x) const { return margin + (x - x_lo_) / (x_hi_ - x_lo_) * (width - 2 * margin); }
    double py(double y) const { return height - margin - (y - y_lo_) / (y_hi_ - y_lo_) * (height - 2 * margin); }
    double clamp_y(double y) const { return std::clamp(y, y_lo_, y_hi_); }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char ch : s) {
            switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
            }
        }
        return out;
    }

    void line(double x0, double y0, double x1, double y1, const std::string& id,
              const std::string& color, bool dashed) {
        std::ostringstream os;
        os << "<line id=\"" << id << "\" x1=\"" << format_number(px(x0)) << "\" y1=\"" << format_number(py(y0))
           << "\" x2=\"" << format_number(px(x1)) << "\" y2=\"" << format_number(py(y1))
           << "\" stroke=\"" << color << "\" stroke-width=\"1\""
           << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
        body_.push_back(os.str());
    }

    void axes(std::ostringstream& os) const {
        const double left = margin, right = width - margin, top = margin, bottom = height - margin;
        os << "<g id=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n"
           << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
           << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 4; ++i) {
            const double fx = x_lo_ + (x_hi_ - x_lo_) * i / 4.0;
            const double fy = y_lo_ + (y_hi_ - y_lo_) * i / 4.0;
            os << "<text x=\"" << format_number(px(fx)) << "\" y=\"" << bottom + 18
               << "\" text-anchor=\"middle\">" << tick(fx) << "</text>\n";
            os << "<text x=\"" << left - 6 << "\" y=\"" << format_number(py(fy) + 4)
               << "\" text-anchor=\"end\">" << tick(fy) << "</text>\n";
        }
        os << "<text x=\"400\" y=\"" << height - 15 << "\" text-anchor=\"middle\">" << escape(x_label_)
           << "</text>\n"
           << "<text x=\"18\" y=\"300\" text-anchor=\"middle\" transform=\"rotate(-90 18 300)\">"
           << escape(y_label_) << "</text>\n</g>\n";
    }

    static std::string tick(double v) {
        std::ostringstream os;
        os.precision(3);
        os << v;
        return os.str();
    }

    std::string title_, x_label_, y_label_;
    double x_lo_ = 0.0, x_hi_ = 1.0, y_lo_ = 0.0, y_hi_ = 1.0;
    std::vector<std::string> body_;
};

} // namespace peakpaths::cli
