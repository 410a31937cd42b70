#pragma once

#include "gumbelrates/norming.hpp"

namespace gumbelrates {

// A finite-n asymptotic prediction together with the magnitude of its stated
// error envelope (the O(.) term, constant unknown).
struct ExpansionTerm {
    double value;
    double error_scale;
};

enum class PdfOrder { Second, Refined };

// Which coefficient multiplies c_n/(2 log n) in the mean prediction. Two
// candidates circulate (gamma and gamma+1); the expansion algebra gives
// gamma+1, and rates::arbitrate_mean_coefficient settles it numerically.
enum class MeanCoefficient { GammaPlusOne, Gamma };

// n Psi(z(x)) prediction: (1/n) e^{-x} (1 - (t^2+2t+2)/(4 log n)) for the
// Classical scheme, with the HallRoot and SecondOrder analogues.
// Refuses x outside the expansion window.
ExpansionTerm tail_expansion(const NormingScheme& s, double x);

// F_n(x) - Lambda(x) prediction: Lambda e^{-x} (t^2+2t+2)/(4 log n) and the
// scheme analogues (HallRoot: (x^2+2x+2)/(2 b^2); SecondOrder:
// (-2 c x + x^2 + 2x + 2)/(4 log n)).
ExpansionTerm cdf_error_expansion(const NormingScheme& s, double x);

// Density prediction. Second: lambda (1 + e^{-x}(t^2+2t+2)/(4L) - t^2/(4L)).
// Refined adds the full 1/(log n)^2 bracket. Orders per the source scheme:
// Refined exists for Classical only; HallRoot has Second only.
ExpansionTerm pdf_expansion(const NormingScheme& s, double x, PdfOrder order);

struct MomentPredictions {
    ExpansionTerm mean;        // gamma - c^2/(4L) + (gamma+1) c/(2L), error O(1/L)
    ExpansionTerm exp_moment;  // E[e^{-Y} - t^2(Y)/(4L)] ~ 1 + c^4/(32 L^2)
};

MomentPredictions moment_predictions(double n,
                                     MeanCoefficient coeff = MeanCoefficient::GammaPlusOne);

// The Refined-order 1/(32 L^2) bracket by itself (Classical scheme), used by
// the second-order KL predictor and by tests of the Refined expansion.
double refined_density_bracket(const NormingScheme& s, double x);

}  // namespace gumbelrates
