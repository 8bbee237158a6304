#pragma once

#include <map>
#include <string>
#include <vector>

#include "quasifrag/errors.hpp"

namespace quasifrag {

enum class Method { correlation, fock_oracle, prediction, ed_oracle, boson_sector, gaussian_wick };

const char* method_name(Method m);

// Universal output record: Renyi index n (n=1 means von Neumann), geometry,
// entropy value in nats, producing method, and numerical diagnostics
// (eigenvalue clip counts and similar condition notes).
struct EntropyResult {
  double n = 1.0;
  int L = 0;
  int L_A = 0;
  double value = 0.0;
  Method method = Method::correlation;
  std::map<std::string, double> diagnostics;
};

// Binary Renyi/Shannon entropy of a mode with occupation probability
// nu in [0,1]:  n=1: -nu log nu - (1-nu) log(1-nu);
// n!=1: log(nu^n + (1-nu)^n) / (1-n).  Natural log.
double binary_entropy(double nu, double n);

// Entropy of a density-matrix spectrum. Eigenvalues within `clip_tol` below
// zero are clipped to 0; more negative ones are a hard NumericalError.
// n=1: -sum p log p; n!=1: log(sum p^n) / (1-n).
double entropy_from_spectrum(const std::vector<double>& probs, double n,
                             double clip_tol = 1e-10);

}  // namespace quasifrag
