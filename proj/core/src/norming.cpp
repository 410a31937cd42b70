#include "gumbelrates/norming.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gumbelrates {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

// Root of s + log s = rhs (strictly increasing, concave).
double solve_hall_s(double rhs) {
    double s = (rhs > 1.0) ? rhs - std::log(rhs) : 0.5;
    for (int it = 0; it < 100; ++it) {
        const double f = s + std::log(s) - rhs;
        if (std::fabs(f) <= 1e-14 * (1.0 + std::fabs(rhs))) return s;
        double next = s - f / (1.0 + 1.0 / s);
        if (next <= 0.0) next = 0.5 * s;
        s = next;
    }
    throw std::runtime_error("make_scheme: HallRoot Newton failed to converge (internal error)");
}

}  // namespace

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Classical: return "classical";
        case Kind::HallRoot: return "hall";
        case Kind::SecondOrder: return "second";
    }
    return "?";
}

std::optional<Kind> kind_from_name(const std::string& name) {
    if (name == "classical") return Kind::Classical;
    if (name == "hall") return Kind::HallRoot;
    if (name == "second") return Kind::SecondOrder;
    return std::nullopt;
}

NormingScheme make_scheme(Kind kind, double n) {
    if (!(n >= 3.0 && n <= 1e300))
        throw std::domain_error("make_scheme: n must lie in [3, 1e300]");
    NormingScheme s;
    s.kind = kind;
    s.n = n;
    s.log_n = std::log(n);
    const double L = s.log_n;
    const double a = std::sqrt(2.0 * L);
    const double c = 0.5 * std::log(4.0 * std::numbers::pi * L);

    switch (kind) {
        case Kind::Classical:
            s.a = a;
            s.b = a - c / a;
            s.c = c;
            break;
        case Kind::SecondOrder:
            s.a = a;
            s.b = a - c / a - (c * c - 2.0 * c) / (2.0 * a * a * a);
            s.c = c;
            break;
        case Kind::HallRoot: {
            const double rhs = 2.0 * L - kLog2Pi;
            double b = std::sqrt(solve_hall_s(rhs));
            // One polish step on g(b) = b^2 + 2 log b - rhs.
            b -= (b * b + 2.0 * std::log(b) - rhs) / (2.0 * b + 2.0 / b);
            s.a = b;
            s.b = b;
            s.c = std::nullopt;
            break;
        }
    }
    return s;
}

double t_of(const NormingScheme& s, double x) {
    if (!s.c)
        throw std::invalid_argument("t_of: t_n is undefined for the HallRoot scheme");
    if (!std::isfinite(x)) throw std::domain_error("t_of: non-finite x");
    return x - *s.c;
}

ExpansionWindow window_of(double n) {
    if (!(n >= 16.0))
        throw std::domain_error("window_of: n must be at least 16");
    const double L = std::log(n);
    return ExpansionWindow{-0.25 * std::log(L), std::pow(L, 0.25)};
}

}  // namespace gumbelrates
