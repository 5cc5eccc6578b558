#ifndef EIGENCURVE_ERRORS_HPP
#define EIGENCURVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eigencurve {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidGeometry : Error {
    explicit InvalidGeometry(const std::string& msg) : Error("InvalidGeometry: " + msg) {}
};

struct AllZero : Error {
    explicit AllZero(const std::string& msg) : Error("AllZero: " + msg) {}
};

struct InvalidCoupling : Error {
    explicit InvalidCoupling(const std::string& msg) : Error("InvalidCoupling: " + msg) {}
};

struct DimensionTooLarge : Error {
    explicit DimensionTooLarge(const std::string& msg) : Error("DimensionTooLarge: " + msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error("NoConvergence: " + msg) {}
};

struct NoPositivityCertificate : Error {
    explicit NoPositivityCertificate(const std::string& msg)
        : Error("NoPositivityCertificate: " + msg) {}
};

struct EmptyZeroSet : Error {
    explicit EmptyZeroSet(const std::string& msg) : Error("EmptyZeroSet: " + msg) {}
};

struct NotSubcritical : Error {
    explicit NotSubcritical(const std::string& msg) : Error("NotSubcritical: " + msg) {}
};

struct Indeterminate : Error {
    explicit Indeterminate(const std::string& msg) : Error("Indeterminate: " + msg) {}
};

struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error("NonConvergence: " + msg) {}
};

struct UniquenessGap : Error {
    explicit UniquenessGap(const std::string& msg) : Error("UniquenessGap: " + msg) {}
};

struct BranchSplitFailed : Error {
    explicit BranchSplitFailed(const std::string& msg) : Error("BranchSplitFailed: " + msg) {}
};

struct InconsistentCase : Error {
    explicit InconsistentCase(const std::string& msg) : Error("InconsistentCase: " + msg) {}
};

/// Configuration / input-file problem; carries a line number when known.
struct ConfigError : Error {
    int line = 0;
    ConfigError(const std::string& msg, int line_no = 0)
        : Error(line_no > 0 ? "config:" + std::to_string(line_no) + ": " + msg
                            : "config: " + msg),
          line(line_no) {}
};

} // namespace eigencurve

#endif
