// Correlation length from the conjugate elliptic modulus, plus regression
// extraction of the central charge, boundary entropy, and residual constant
// from entropy sweeps.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ctment/entropy.hpp"

namespace ctment {

// c_kappa = 3 kappa / (kappa + 2).
double central_charge(int kappa);

struct BoundaryEntropy {
    int kappa = 1;
    int boundary_i = 0;
    double g_value = 1.0;
    double ln_g = 0.0;
};

// Ground-state degeneracy g^{(i,kappa)} = sin(pi(i+1)/(kappa+2)) / sin(pi/(kappa+2)).
BoundaryEntropy boundary_g(int kappa, int boundary_i);

enum class CorrelationMode { asymptotic, exact };

// Conjugate modulus k' for elliptic nome x = exp(-eps), normalised so that
// k' ~ 4 exp(-pi^2/(2 eps)) as eps -> 0. The log variant stays finite where
// k' itself underflows.
double conjugate_modulus(double epsilon);
double log_conjugate_modulus(double epsilon);

// ln xi. asymptotic mode: pi^2/(2 eps). exact mode: xi^{-1} = atanh(k')
// = -(1/2) ln((1 - k')/(1 + k')).
double log_correlation_length(double epsilon, CorrelationMode mode);

// One-line statement of the modulus/nome convention behind the exact mode.
const std::string& modulus_convention();

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double c_estimate = 0.0; // 12 * slope / pi^2
    double residual_max = 0.0;
    std::vector<std::pair<double, double>> points_used; // (eps, S), eps descending
};

// Unweighted least squares of S against 1/eps. Needs >= 3 samples with a
// genuine spread in eps; meaningful extraction wants a factor >= 4 span.
ScalingFit fit_scaling(std::vector<std::pair<double, double>> samples);

// ln g^{(i,kappa)} from the difference S^{(i)} - S^{(0)}, which cancels both
// the 1/eps term and the kappa-only constant, extrapolated to eps -> 0 by
// two-point Richardson (model: value + c1 eps) over the smallest eps given.
double extract_boundary_entropy(int kappa, int boundary_i, std::vector<double> eps_list,
                                const Truncation& trunc = {});

// C_kappa estimate: S - (c_kappa/6) ln xi - ln g, extrapolated to eps -> 0.
// Independent of i up to truncation error. With the asymptotic ln xi this
// equals ln( sqrt(2) sin(pi/(kappa+2)) / sqrt(kappa+2) ); with the exact
// ln xi it picks up the finite offset of ln xi from pi^2/(2 eps) and is
// reported as an empirical number.
double residual_constant(int kappa, int boundary_i, std::vector<double> eps_list,
                         CorrelationMode mode = CorrelationMode::exact,
                         const Truncation& trunc = {});

} // namespace ctment
