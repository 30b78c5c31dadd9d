#pragma once

#include <functional>

namespace relmass {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 40;
    // Uniform panels integrated independently before adaptive refinement.
    int initial_panels = 16;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    long evaluations;
};

// Adaptive Simpson with Richardson correction. Throws NumericalError if
// any panel is still unresolved at max_depth.
QuadratureResult integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                            const QuadratureOptions& options = {});

}  // namespace relmass
