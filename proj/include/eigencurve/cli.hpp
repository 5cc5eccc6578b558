#ifndef EIGENCURVE_CLI_HPP
#define EIGENCURVE_CLI_HPP

#include <ostream>

#include "eigencurve/config.hpp"

namespace eigencurve {

// exit codes: 0 ok, 1 verification failure, 2 configuration error,
// 3 numerical non-convergence
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumerical = 3;

int cmd_eigen(const RunConfig& cfg, std::ostream& out);
int cmd_curve(const RunConfig& cfg, std::ostream& out);
int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_logistic(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Full command-line entry point (argument parsing plus dispatch).
int run_cli(int argc, const char* const* argv);

} // namespace eigencurve

#endif
