#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <p1n/generator_sets.hpp>
#include <p1n/report.hpp>

namespace p1n {

/// Names "P0".."Pn" then packed plane names "J01", "J02", ...
std::vector<std::string> generator_names(const GeneratorSet& gs);

/// Deterministic battery of Gaussian test fields for commutator checks.
std::vector<SmoothField> test_field_battery(int vdim, int mdim, int count,
                                            std::uint64_t seed);

/// Check every commutator of the set against the structure constants:
/// one item per unordered generator pair, residual maximized over the
/// supplied points and test fields.  `threads` <= 0 picks the hardware
/// concurrency; results are identical for every thread count.
Report verify_algebra(const GeneratorSet& gs, const std::vector<Vec>& points,
                      const std::vector<SmoothField>& fields, double tol, int threads = 1);

/// Check [P_0, Q] = i dQ/dx0 for every generator Q of a schrodinger-picture
/// set (dQ/dx0 = P_k for Q = J_0k, zero otherwise).  Throws
/// std::invalid_argument for other pictures.
Report verify_invariance_condition(const GeneratorSet& gs, const std::vector<Vec>& points,
                                   const std::vector<SmoothField>& fields, double tol);

/// Compare the coefficient fields of two sets operator by operator: the
/// multiplication part and every derivative slot are evaluated at each point
/// and compared entrywise.
Report compare_generator_coefficients(const GeneratorSet& a, const GeneratorSet& b,
                                      const std::vector<Vec>& points, double tol);

}  // namespace p1n
