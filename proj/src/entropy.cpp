#include "quasifrag/entropy.hpp"

#include <cmath>

namespace quasifrag {

const char* method_name(Method m) {
  switch (m) {
    case Method::correlation: return "correlation";
    case Method::fock_oracle: return "fock_oracle";
    case Method::prediction: return "prediction";
    case Method::ed_oracle: return "ed_oracle";
    case Method::boson_sector: return "boson_sector";
    case Method::gaussian_wick: return "gaussian_wick";
  }
  return "unknown";
}

double binary_entropy(double nu, double n) {
  if (n <= 0.0) throw SpecError("binary_entropy: Renyi index must be > 0");
  if (nu < 0.0 || nu > 1.0)
    throw NumericalError("binary_entropy: occupation " + std::to_string(nu) +
                         " outside [0,1]");
  if (n == 1.0) {
    double s = 0.0;
    if (nu > 0.0) s -= nu * std::log(nu);
    if (nu < 1.0) s -= (1.0 - nu) * std::log(1.0 - nu);
    return s;
  }
  return std::log(std::pow(nu, n) + std::pow(1.0 - nu, n)) / (1.0 - n);
}

double entropy_from_spectrum(const std::vector<double>& probs, double n,
                             double clip_tol) {
  if (n <= 0.0) throw SpecError("entropy_from_spectrum: Renyi index must be > 0");
  if (n == 1.0) {
    double s = 0.0;
    for (double p : probs) {
      if (p < -clip_tol)
        throw NumericalError("entropy_from_spectrum: eigenvalue " +
                             std::to_string(p) + " below -" +
                             std::to_string(clip_tol));
      if (p > 0.0) s -= p * std::log(p);
    }
    return s < 0.0 ? 0.0 : s;
  }
  double acc = 0.0;
  for (double p : probs) {
    if (p < -clip_tol)
      throw NumericalError("entropy_from_spectrum: eigenvalue " +
                           std::to_string(p) + " below -" +
                           std::to_string(clip_tol));
    if (p > 0.0) acc += std::pow(p, n);
  }
  const double s = std::log(acc) / (1.0 - n);
  return (s < 0.0 && s > -1e-12) ? 0.0 : s;
}

}  // namespace quasifrag
