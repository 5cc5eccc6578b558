#ifndef EIGENCURVE_VERIFY_HPP
#define EIGENCURVE_VERIFY_HPP

#include <string>
#include <vector>

#include "eigencurve/spectral_maps.hpp"

namespace eigencurve {

struct CheckOutcome {
    std::string name;
    bool pass = false;
    double margin = 0.0; // distance to the failure boundary (>= 0 passes)
    std::string note;
};

struct VerifyReport {
    std::vector<CheckOutcome> checks;
    std::vector<std::string> warnings; // thin margins, e.g. coarse meshes
    bool all_passed() const;
};

/// Property suite over a configured context: shift identities, oracle
/// agreement, monotonicity/continuity/concavity of Lambda1, the cota bounds,
/// derivative-sign formulas and the two-root property.  Deterministic for a
/// fixed seed.
VerifyReport run_verification(const SpectralContext& ctx, unsigned long seed, int trials);

} // namespace eigencurve

#endif
