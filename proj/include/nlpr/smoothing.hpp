#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlpr/types.hpp"

namespace nlpr {

enum class SmoothingKind { PowerLaw, Exponential };

inline const char* name(SmoothingKind k) {
  return k == SmoothingKind::PowerLaw ? "power" : "exp";
}

/// One-parameter decay family over distances: x^(-alpha) or exp(-alpha x),
/// nonincreasing for x > 0, with f(+inf) = 0 by convention. alpha = 0 is
/// allowed and gives uniform weight over finite distances.
struct SmoothingFamily {
  SmoothingKind kind = SmoothingKind::PowerLaw;
  double alpha = 1.0;

  static SmoothingFamily powerLaw(double alpha) { return make(SmoothingKind::PowerLaw, alpha); }
  static SmoothingFamily exponential(double alpha) {
    return make(SmoothingKind::Exponential, alpha);
  }
  static SmoothingFamily make(SmoothingKind kind, double alpha) {
    if (!(alpha >= 0)) throw std::invalid_argument("smoothing alpha must be nonnegative");
    return SmoothingFamily{kind, alpha};
  }

  double operator()(double x) const {
    if (x == kInf) return 0.0;  // convention, checked before pow(inf, -0)
    if (x < 0) throw std::domain_error("smoothing evaluated at a negative distance");
    if (kind == SmoothingKind::PowerLaw) {
      if (x == 0.0)
        throw std::domain_error("power-law smoothing is undefined at distance 0");
      return std::pow(x, -alpha);
    }
    return std::exp(-alpha * x);
  }
};

inline SmoothingFamily smoothingFromName(const std::string& s, double alpha) {
  if (s == "power") return SmoothingFamily::powerLaw(alpha);
  if (s == "exp") return SmoothingFamily::exponential(alpha);
  throw std::invalid_argument("unknown smoothing kind: " + s);
}

}  // namespace nlpr
