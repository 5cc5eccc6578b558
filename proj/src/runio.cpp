#include "eigencurve/runio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "eigencurve/errors.hpp"
#include "eigencurve/parallel.hpp"

namespace eigencurve {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    // %.17g round-trips; trim to the shortest representation that still does
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) header_line_ += ',';
        header_line_ += header[i];
    }
    header_line_ += '\n';
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
    comments_ += "# " + key + " = " + value + "\n";
}

void CsvWriter::flush_header() {
    if (!header_written_) {
        buf_ = comments_ + header_line_;
        header_written_ = true;
    }
}

void CsvWriter::row(const std::vector<double>& values) {
    flush_header();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += format_double(values[i]);
    }
    buf_ += '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    flush_header();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += values[i];
    }
    buf_ += '\n';
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << (header_written_ ? buf_ : comments_ + header_line_);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

std::string landmarks_text(const EigencurveTrace& t) {
    std::string s;
    auto kv = [&s](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    kv("case", to_string(t.classification.tag));
    kv("int_sign_m1", std::to_string(t.classification.int_sign_m1));
    kv("int_sign_m2", std::to_string(t.classification.int_sign_m2));
    kv("closed", t.closed ? "1" : "0");
    kv("Lambda1_minus", format_double(t.Lambda1_minus));
    kv("Lambda1_plus", format_double(t.Lambda1_plus));
    kv("Lambda2_minus", format_double(t.Lambda2_minus));
    kv("Lambda2_plus", format_double(t.Lambda2_plus));
    kv("mu_star", t.mu_star ? format_double(*t.mu_star) : "none");
    kv("lambda1_max", format_double(t.lambda1_max));
    kv("lambda2_bar", format_double(t.lambda2_bar));
    kv("lambda1_min", format_double(t.lambda1_min));
    kv("lambda2_underbar", format_double(t.lambda2_underbar));
    kv("lambda2_max", format_double(t.lambda2_max));
    kv("lambda2_min", format_double(t.lambda2_min));
    kv("lambda2_star", t.lambda2_star ? format_double(*t.lambda2_star) : "none");
    kv("points", std::to_string(t.points.size()));
    kv("unbounded_rays", std::to_string(t.unbounded_directions.size()));
    return s;
}

std::string trace_csv(const EigencurveTrace& trace) {
    CsvWriter csv({"t", "lambda1", "lambda2", "absF"});
    const std::string lm = landmarks_text(trace);
    std::size_t start = 0;
    while (start < lm.size()) {
        const std::size_t eol = lm.find('\n', start);
        const std::string line = lm.substr(start, eol - start);
        const std::size_t eq = line.find(" = ");
        csv.comment(line.substr(0, eq), line.substr(eq + 3));
        start = eol + 1;
    }
    for (const auto& p : trace.points) csv.row({p.t, p.l1, p.l2, p.abs_F});
    return csv.str();
}

void write_trace_csv(const EigencurveTrace& trace, const std::string& path) {
    write_file(path, trace_csv(trace));
}

namespace {

struct Box {
    double x0, x1, y0, y1;
    double sx(double x, int w) const { return (x - x0) / (x1 - x0) * w; }
    double sy(double y, int h) const { return h - (y - y0) / (y1 - y0) * h; }
};

} // namespace

std::string curve_svg(const EigencurveTrace& trace, const SpectralContext& ctx,
                      const SvgOptions& opts) {
    // view box: the traced points padded, clamped to a sane window
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    for (const auto& p : trace.points) {
        x0 = std::min(x0, p.l1);
        x1 = std::max(x1, p.l1);
        y0 = std::min(y0, p.l2);
        y1 = std::max(y1, p.l2);
    }
    const double spanx = x1 - x0, spany = y1 - y0;
    // keep far asymptotic tails from flattening the interesting region
    x0 = std::max(x0, -8.0 * (std::abs(trace.lambda1_max) + 1.0));
    y0 = std::max(y0, -8.0 * (std::abs(trace.lambda2_max) + 1.0));
    x1 += 0.05 * spanx;
    x0 -= 0.05 * spanx;
    y1 += 0.05 * spany;
    y0 -= 0.05 * spany;
    const Box box{x0, x1, y0, y1};
    const int W = opts.width, H = opts.height;

    std::string s;
    char tmp[256];
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(tmp, sizeof(tmp),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\">\n",
                  W, H, W, H);
    s += tmp;
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // sign-shaded background from a grid of F evaluations
    const int gn1 = opts.grid_n1, gn2 = opts.grid_n2;
    std::vector<double> fval(static_cast<std::size_t>(gn1) * gn2);
    parallel_for_index(fval.size(), ParallelMode::openmp, [&](std::size_t idx) {
        const int i = int(idx % gn1), j = int(idx / gn1);
        const double lx = x0 + (i + 0.5) * (x1 - x0) / gn1;
        const double ly = y0 + (j + 0.5) * (y1 - y0) / gn2;
        fval[idx] = eval_F(lx, ly, ctx);
    });
    const double cw = double(W) / gn1, ch = double(H) / gn2;
    s += "<g stroke=\"none\" fill-opacity=\"0.12\">\n";
    for (int j = 0; j < gn2; ++j) {
        int i = 0;
        while (i < gn1) { // merge runs of equal sign
            const bool pos = fval[std::size_t(j) * gn1 + i] > 0;
            int k = i;
            while (k < gn1 && (fval[std::size_t(j) * gn1 + k] > 0) == pos) ++k;
            std::snprintf(tmp, sizeof(tmp),
                          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                          "fill=\"%s\"/>\n",
                          i * cw, H - (j + 1) * ch, (k - i) * cw + 0.5, ch + 0.5,
                          pos ? "#2e7d32" : "#c62828");
            s += tmp;
            i = k;
        }
    }
    s += "</g>\n";

    // axes
    std::snprintf(tmp, sizeof(tmp),
                  "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"%d\" stroke=\"#888\" "
                  "stroke-width=\"1\"/>\n",
                  box.sx(0, W), box.sx(0, W), H);
    if (x0 < 0 && x1 > 0) s += tmp;
    std::snprintf(tmp, sizeof(tmp),
                  "<line x1=\"0\" y1=\"%.2f\" x2=\"%d\" y2=\"%.2f\" stroke=\"#888\" "
                  "stroke-width=\"1\"/>\n",
                  box.sy(0, H), W, box.sy(0, H));
    if (y0 < 0 && y1 > 0) s += tmp;

    // landmark markers: Lambda2 asymptotes, lambda1 extremes, mu* tangent ray
    auto hline = [&](double y, const char* color) {
        if (y < y0 || y > y1) return;
        std::snprintf(tmp, sizeof(tmp),
                      "<line x1=\"0\" y1=\"%.2f\" x2=\"%d\" y2=\"%.2f\" stroke=\"%s\" "
                      "stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n",
                      box.sy(y, H), W, box.sy(y, H), color);
        s += tmp;
    };
    auto vline = [&](double x, const char* color) {
        if (x < x0 || x > x1) return;
        std::snprintf(tmp, sizeof(tmp),
                      "<line x1=\"%.2f\" y1=\"0\" x2=\"%.2f\" y2=\"%d\" stroke=\"%s\" "
                      "stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n",
                      box.sx(x, W), box.sx(x, W), H, color);
        s += tmp;
    };
    if (std::isfinite(trace.Lambda2_plus)) hline(trace.Lambda2_plus, "#1565c0");
    if (std::isfinite(trace.Lambda2_minus)) hline(trace.Lambda2_minus, "#1565c0");
    vline(trace.lambda1_max, "#6a1b9a");
    if (trace.classification.tag == CaseTag::both_sign) vline(trace.lambda1_min, "#6a1b9a");
    if (trace.mu_star) {
        // tangent ray through the origin with slope mu*
        const double mu = *trace.mu_star;
        double rx0 = x0, rx1 = x1;
        std::snprintf(tmp, sizeof(tmp),
                      "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ef6c00\" "
                      "stroke-width=\"1\" stroke-dasharray=\"2 4\"/>\n",
                      box.sx(rx0, W), box.sy(mu * rx0, H), box.sx(rx1, W), box.sy(mu * rx1, H));
        s += tmp;
    }

    // the curve polyline
    s += "<polyline fill=\"none\" stroke=\"#111\" stroke-width=\"2\" points=\"";
    for (const auto& p : trace.points) {
        std::snprintf(tmp, sizeof(tmp), "%.2f,%.2f ", box.sx(p.l1, W), box.sy(p.l2, H));
        s += tmp;
    }
    s += "\"/>\n";

    // origin marker
    std::snprintf(tmp, sizeof(tmp),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"#111\"/>\n", box.sx(0, W),
                  box.sy(0, H));
    s += tmp;
    std::snprintf(tmp, sizeof(tmp),
                  "<text x=\"8\" y=\"16\" font-family=\"monospace\" font-size=\"12\">case %s</text>\n",
                  to_string(trace.classification.tag).c_str());
    s += tmp;
    s += "</svg>\n";
    return s;
}

} // namespace eigencurve
