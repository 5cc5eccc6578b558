#ifndef EIGENCURVE_RUNIO_HPP
#define EIGENCURVE_RUNIO_HPP

#include <string>
#include <vector>

#include "eigencurve/curve.hpp"

namespace eigencurve {

/// Shortest round-trip decimal formatting; deterministic across runs.
std::string format_double(double v);

/// Comma-separated row writer with '.' decimals and a header row.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void comment(const std::string& key, const std::string& value); // "# key = value"
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    const std::string& str() const { return buf_; }
    void write(const std::string& path) const;

private:
    std::string buf_;
    std::size_t columns_;
    bool header_written_ = false;
    std::string header_line_;
    std::string comments_;
    void flush_header();
};

std::string trace_csv(const EigencurveTrace& trace);
void write_trace_csv(const EigencurveTrace& trace, const std::string& path);

/// Landmarks as a standalone "key = value" block.
std::string landmarks_text(const EigencurveTrace& trace);

struct SvgOptions {
    int width = 900;
    int height = 640;
    int grid_n1 = 120, grid_n2 = 90; // background sign-sampling resolution
};

/// Self-contained SVG: sign-shaded background, the curve polyline, axes and
/// landmark markers.  Pure function of the trace and the sampled sign grid.
std::string curve_svg(const EigencurveTrace& trace, const SpectralContext& ctx,
                      const SvgOptions& opts);

void write_file(const std::string& path, const std::string& content);

} // namespace eigencurve

#endif
