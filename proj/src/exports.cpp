#include "cherry/io/exports.hpp"

#include <cstdio>
#include <fstream>

#include "cherry/io/json_writer.hpp"

namespace cherry {

std::string diagram_json(const BifDiagram& d) {
    JsonWriter w;
    w.begin_object();
    w.kv("family", d.family);
    w.kv("Q", (long long)d.max_den);
    w.key("theta_range").begin_array().value(d.theta_range.lo).value(d.theta_range.hi).end_array();
    w.key("plateaus").begin_array();
    for (const auto& p : d.plateaus) {
        w.begin_object();
        w.kv("p", p.pq.p);
        w.kv("q", p.pq.q);
        w.kv("lo", p.theta_lo);
        w.kv("hi", p.theta_hi);
        w.key("tags").begin_array().value(endpoint_tag_name(p.tag_lo)).value(
            endpoint_tag_name(p.tag_hi));
        w.end_array();
        w.kv("hit_index", (long long)p.hit_index);
        w.kv("cert_lo", p.cert_lo);
        w.kv("cert_hi", p.cert_hi);
        w.end_object();
    }
    w.end_array();
    w.key("loops").begin_array();
    for (double t : d.loops) w.value(t);
    w.end_array();
    w.key("residual").begin_object();
    w.key("intervals").begin_array();
    for (const auto& iv : d.residual.intervals)
        w.begin_array().value(iv.lo).value(iv.hi).end_array();
    w.end_array();
    w.kv("measure", d.residual.measure());
    w.end_object();
    w.key("connections").begin_array();
    for (const auto& c : d.connections) {
        w.begin_object();
        w.key("plateau").begin_object();
        w.kv("p", c.pq.p);
        w.kv("q", c.pq.q);
        w.end_object();
        w.kv("cell", (long long)c.cell);
        w.kv("theta", c.theta);
        w.end_object();
    }
    w.end_array();
    w.key("boxcounts").begin_array();
    for (const auto& e : d.boxcounts) {
        w.begin_object();
        w.kv("eps", e.eps);
        w.kv("N", e.n);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string cover_json(const IntervalCover& cover, const std::vector<BoxCountEntry>& boxcounts) {
    JsonWriter w;
    w.begin_object();
    w.kv("depth", (long long)cover.depth);
    w.key("intervals").begin_array();
    for (const auto& iv : cover.intervals)
        w.begin_array().value(iv.lo).value(iv.hi).end_array();
    w.end_array();
    w.kv("measure", cover.measure());
    w.key("boxcounts").begin_array();
    for (const auto& e : boxcounts) {
        w.begin_object();
        w.kv("eps", e.eps);
        w.kv("N", e.n);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string staircase_csv(const std::vector<StaircaseSample>& samples) {
    std::string out = "theta,rho,width\n";
    char buf[128];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.theta, s.rho, s.width);
        out += buf;
    }
    return out;
}

namespace {

constexpr double kW = 900, kH = 560, kPad = 50;

double sx(double t, double lo, double hi) { return kPad + (t - lo) / (hi - lo) * (kW - 2 * kPad); }

std::string svg_header() {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                  "viewBox=\"0 0 %g %g\">\n",
                  kW, kH, kW, kH);
    return std::string(buf) + "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string diagram_svg(const BifDiagram& d, const std::vector<StaircaseSample>& samples) {
    const double t_lo = d.theta_range.lo, t_hi = d.theta_range.hi;
    double r_lo = 1e300, r_hi = -1e300;
    for (const auto& s : samples) {
        r_lo = std::min(r_lo, s.rho);
        r_hi = std::max(r_hi, s.rho);
    }
    if (!(r_hi > r_lo)) {
        r_lo -= 0.5;
        r_hi += 0.5;
    }
    auto sy = [&](double r) { return kH - kPad - 80 - (r - r_lo) / (r_hi - r_lo) * (kH - 2 * kPad - 80); };

    std::string out = svg_header();
    char buf[256];

    out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(s.theta, t_lo, t_hi), sy(s.rho));
        out += buf;
    }
    out += "\"/>\n";

    // Cantor bars: residual intervals near the bottom, loop ticks below.
    for (const auto& iv : d.residual.intervals) {
        double x0 = sx(iv.lo, t_lo, t_hi), x1 = sx(iv.hi, t_lo, t_hi);
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.2f\" y=\"%.1f\" width=\"%.3f\" height=\"18\" fill=\"#d62728\"/>\n",
                      x0, kH - kPad - 50, std::max(x1 - x0, 0.4));
        out += buf;
    }
    for (double t : d.loops) {
        double x = sx(t, t_lo, t_hi);
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.2f\" y1=\"%.1f\" x2=\"%.2f\" y2=\"%.1f\" stroke=\"#2ca02c\" "
                      "stroke-width=\"0.8\"/>\n",
                      x, kH - kPad - 26, x, kH - kPad - 12);
        out += buf;
    }
    for (const auto& c : d.connections) {
        double x = sx(c.theta, t_lo, t_hi);
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.1f\" r=\"2\" fill=\"#9467bd\"/>\n", x,
                      kH - kPad - 5);
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

std::string cover_svg(const IntervalCover& cover) {
    std::string out = svg_header();
    if (cover.intervals.empty()) return out + "</svg>\n";
    double lo = cover.intervals.front().lo, hi = cover.intervals.back().hi;
    if (!(hi > lo)) hi = lo + 1.0;
    char buf[200];
    for (const auto& iv : cover.intervals) {
        double x0 = sx(iv.lo, lo, hi), x1 = sx(iv.hi, lo, hi);
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.2f\" y=\"%.1f\" width=\"%.3f\" height=\"40\" fill=\"#1f77b4\"/>\n",
                      x0, kH / 2 - 20, std::max(x1 - x0, 0.4));
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorClass::Config, "cannot write " + path);
    out << content;
}

}  // namespace cherry
