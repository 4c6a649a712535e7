#include "ostc/svg.hpp"

#include <cstdio>

namespace ostc {

static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

SvgWriter::SvgWriter(double width, double height) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
         << num(height) << "\">\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2,
                     const std::string& stroke, double stroke_width) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
         << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
         << num(stroke_width) << "\"/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, const std::string& fill,
                       const std::string& stroke, double stroke_width) {
    out_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
         << "\" fill=\"" << fill << '"';
    if (!stroke.empty())
        out_ << " stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_width) << '"';
    out_ << "/>\n";
}

void SvgWriter::rect(double x, double y, double w, double h, const std::string& fill,
                     const std::string& stroke, double stroke_width) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
         << "\" height=\"" << num(h) << "\" fill=\"" << fill << '"';
    if (!stroke.empty())
        out_ << " stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_width) << '"';
    out_ << "/>\n";
}

void SvgWriter::text(double x, double y, const std::string& content, double size,
                     const std::string& fill, const std::string& anchor) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
         << "\" font-family=\"sans-serif\" fill=\"" << fill << "\" text-anchor=\"" << anchor
         << "\">" << svg_escape(content) << "</text>\n";
}

std::string SvgWriter::finish() {
    if (!finished_) {
        out_ << "</svg>\n";
        finished_ = true;
    }
    return out_.str();
}

std::string svg_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace ostc
