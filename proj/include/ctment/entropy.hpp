// Entanglement entropy S^{(i,kappa)} = ln Z - x ln x Z'/Z of a half-infinite
// chain, by four routes: direct kernel sums, Poisson-resummed series,
// spectrum probabilities, and the scaling-limit closed form.

#pragma once

#include "ctment/character.hpp"

namespace ctment {

enum class Method { direct, poisson, spectrum, asymptotic };

const char* method_name(Method m);

struct EntropyResult {
    double value = 0.0; // nats
    Method method = Method::direct;
    double est_error = 0.0;
    long terms_used = 0;
};

// f(y) = ln(1 - e^{-y}) + y/(1 - e^y): the entropy contribution of a single
// product factor (1 - e^{-y}). Negative for all y > 0; ~ ln y - 1 near 0;
// decays like -(1+y) e^{-y} at infinity.
double entropy_kernel(double y);

// Cosine transform int_0^inf f(t) cos(y t) dt
//   = (pi/2y) (pi y - sinh(pi y) cosh(pi y)) / sinh^2(pi y),
// continued to -pi^2/3 at y = 0. Even in y; y * transform -> -pi/2 at large y.
double entropy_kernel_transform(double y);

// entropy_kernel_transform(y) + pi/(2y): what remains of the transform once
// its -pi/(2y) envelope is split off. Positive, decays like y e^{-2 pi y}.
double entropy_kernel_transform_tail(double y);

// S(a,b) = sum_{n in Z} f(|eps (a + n b)|), the entropy of one block T(a,b).
// Bilateral sum truncated when |f| < abs_tol/10 on both tails.
double block_entropy_direct(int a, int b, double epsilon, const Truncation& trunc = {});

// Same quantity through the Poisson-resummed series
//   S(a,b) = -2 pi^2/(3 eps b) + (4/(eps b)) sum_{n>=1} fhat(2 pi n/(eps b)) cos(2 pi n a/b).
// The 1/n part of the series is summed in closed form, ln(2 sin(pi a/b)),
// leaving an exponentially convergent remainder at every eps.
double block_entropy_poisson(int a, int b, double epsilon, const Truncation& trunc = {});

// Scaling-limit form -2 pi^2/(3 eps b) + ln(2 sin(pi a/b)).
double block_entropy_asymptotic(int a, int b, double epsilon);

// Full S^{(i,kappa)} as sum_j e_j S(a_j, b_j) over the block decomposition
// (or via spectrum probabilities when method == spectrum). The exact routes
// enforce S >= 0; the asymptotic closed form is reported as computed, since
// it is only meaningful for small eps.
EntropyResult entropy(const ModelPoint& point, Method method, const Truncation& trunc = {});

// S = -sum_n d_n q_n ln q_n with per-eigenstate probability q_n = x^{2n}/Z
// (level n carries d_n degenerate eigenvalues), Z from the theta quotient.
// Probabilities are renormalised over the truncated window and the shift is
// folded into est_error. Refuses x > 0.85 (tail too heavy).
EntropyResult entropy_from_spectrum(const ModelPoint& point, int order, const Truncation& trunc = {});

// Scaling-limit closed form
//   S ~ (pi^2/(12 eps)) c_kappa + ln( sqrt(2) sin(pi (i+1)/(kappa+2)) / sqrt(kappa+2) ).
double entropy_asymptotic(const ModelPoint& point);

} // namespace ctment
