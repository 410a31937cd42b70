#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace gumbelrates {

struct MaxSearchResult {
    double argmax = 0.0;
    double value = 0.0;
    std::int64_t evals = 0;
};

// Maximum of f over [lo, hi]: coarse grid localization followed by
// golden-section refinement of the best bracket down to x-resolution xtol.
MaxSearchResult grid_golden_max(const std::function<double(double)>& f,
                                double lo, double hi, int grid_points, double xtol);

// Golden-section on a bracket [a, b] known to contain a single maximum.
MaxSearchResult golden_section_max(const std::function<double(double)>& f,
                                   double a, double b, double xtol);

// Sign changes of f on a uniform scan grid, each sharpened by bisection.
// Returns the roots in ascending order; at most max_roots are reported.
std::vector<double> find_sign_changes(const std::function<double(double)>& f,
                                      double lo, double hi, int grid_points,
                                      int max_roots = 16);

}  // namespace gumbelrates
