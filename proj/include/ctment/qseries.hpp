// q-Pochhammer symbols, theta functions, and exact truncated q-product power
// series. Infinite products are accumulated in log space and exponentiated
// last, so the x -> 1 regime (eps down to ~0.02 and below) does not underflow.

#pragma once

#include <string>
#include <vector>

#include "ctment/errors.hpp"

namespace ctment {

// Coupling eps > 0 together with the nome x = exp(-eps) in (0,1).
// The two representations are made consistent at construction.
class Nome {
public:
    static Nome from_epsilon(double epsilon);
    static Nome from_x(double x);

    double epsilon() const { return epsilon_; }
    double x() const { return x_; }

private:
    Nome(double epsilon, double x) : epsilon_(epsilon), x_(x) {}

    double epsilon_;
    double x_;
};

// Absolute tolerance on the final value plus a hard cap on series terms.
struct Truncation {
    double abs_tol = 1e-13;
    long max_terms = 10000000;

    void validate() const;
};

// ln (z;w)_inf = sum_{n>=0} ln(1 - z w^n) for 0 <= z < 1, 0 < w < 1.
// Truncated once the geometric tail bound drops below abs_tol; result <= 0.
double log_qpochhammer(double z, double w, const Truncation& trunc = {});

// (z;w)_inf itself; value in (0,1].
double qpochhammer(double z, double w, const Truncation& trunc = {});

// theta_w(z) = (z;w)_inf (w/z;w)_inf (w;w)_inf.
// Requires 0 < z < 1, 0 < w < 1 and w/z < 1 so that all three product
// arguments lie in [0,1). Symmetric under z <-> w/z.
double log_theta(double w, double z, const Truncation& trunc = {});
double theta(double w, double z, const Truncation& trunc = {});

// Exact rational exponent; only denominators 1 and 2 occur here.
struct Rational {
    int num = 0;
    int den = 1;

    double value() const { return static_cast<double>(num) / den; }
};

// One factor (x^step; x^modulus)_inf ^ power of a q-product.
struct QFactor {
    int step = 1;
    int modulus = 2;
    Rational power{1, 1};
};

// Exact series coefficients. 128-bit so that character expansions up to
// order ~700 in x^2 steps stay well inside the representable range.
using Coeff = __int128;

std::string coeff_to_string(Coeff c);
double coeff_to_double(Coeff c);

// Coefficients c_0..c_order of prod_j (x^{a_j}; x^{b_j})_inf^{e_j} as a formal
// power series in x, by exact overflow-checked integer polynomial arithmetic.
// Half-integer exponents must cancel pairwise between factors with the same
// (step, modulus); anything left over is rejected.
std::vector<Coeff> qproduct_series(const std::vector<QFactor>& factors, int order);

} // namespace ctment
