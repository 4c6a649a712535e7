#pragma once

#include <sstream>
#include <string>

namespace ostc {

// Minimal deterministic SVG builder; coordinates are written with fixed
// precision so identical inputs always produce identical bytes.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "", double stroke_width = 1.0);
    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "", double stroke_width = 1.0);
    void text(double x, double y, const std::string& content, double size,
              const std::string& fill = "#000000", const std::string& anchor = "start");

    std::string finish();

private:
    std::ostringstream out_;
    bool finished_ = false;
};

std::string svg_escape(const std::string& s);

}  // namespace ostc
