#pragma once

#include <optional>
#include <string>

namespace gumbelrates {

// Which (a_n, b_n) pair normalizes the maximum.
enum class Kind {
    Classical,    // a = sqrt(2 log n), b = a - c/a
    HallRoot,     // b solves 2 pi b^2 exp(b^2) = n^2, scale is b itself
    SecondOrder,  // b = a - c/a - (c^2 - 2c)/(2 a^3)
};

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);  // classical|hall|second

struct NormingScheme {
    Kind kind;
    double n;                 // effective sample size, real, 3 <= n <= 1e300
    double a;                 // scale constant
    double b;                 // centering constant
    std::optional<double> c;  // c_n = log(sqrt(2 pi) a_n); absent for HallRoot
    double log_n;
};

// Builds the scheme; HallRoot solves s + log s = 2 log n - log(2 pi) in
// s = b^2 by safeguarded Newton, then polishes b directly.
NormingScheme make_scheme(Kind kind, double n);

// t_n(x) = x - c_n. Undefined for HallRoot.
double t_of(const NormingScheme& s, double x);

// Validity region [-l1(n), l2(n)] of the finite-n expansions,
// l1 = (1/4) log log n, l2 = (log n)^{1/4}. Requires n >= 16.
struct ExpansionWindow {
    double lo;
    double hi;
    bool contains(double x) const { return x >= lo && x <= hi; }
};

ExpansionWindow window_of(double n);

}  // namespace gumbelrates
