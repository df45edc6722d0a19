#include "ctment/qseries.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

namespace ctment {

Nome Nome::from_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::domain_error("Nome: epsilon must be finite and > 0");
    double x = std::exp(-epsilon);
    if (!(x > 0.0))
        throw std::domain_error("Nome: epsilon so large that x = exp(-epsilon) underflows");
    return Nome(epsilon, x);
}

Nome Nome::from_x(double x) {
    if (!(x > 0.0) || !(x < 1.0))
        throw std::domain_error("Nome: x must lie strictly inside (0,1)");
    return Nome(-std::log(x), x);
}

void Truncation::validate() const {
    if (!(abs_tol > 0.0))
        throw std::domain_error("Truncation: abs_tol must be > 0");
    if (max_terms < 1)
        throw std::domain_error("Truncation: max_terms must be >= 1");
}

double log_qpochhammer(double z, double w, const Truncation& trunc) {
    trunc.validate();
    if (!(z >= 0.0) || z >= 1.0)
        throw std::domain_error("log_qpochhammer: need 0 <= z < 1");
    if (!(w > 0.0) || w >= 1.0)
        throw std::domain_error("log_qpochhammer: need 0 < w < 1");
    if (z == 0.0)
        return 0.0;

    double sum = 0.0;
    double t = z; // z w^n
    for (long n = 0; n < trunc.max_terms; ++n) {
        sum += std::log1p(-t);
        double t_next = t * w;
        // Tail after omitting index n+1 onward: using |ln(1-t)| <= t/(1-t)
        // and the geometric envelope of z w^m,
        //   sum_{m>n} -ln(1 - z w^m) <= t_next / ((1 - t_next)(1 - w)).
        double bound = t_next / ((1.0 - t_next) * (1.0 - w));
        if (bound < trunc.abs_tol)
            return sum;
        t = t_next;
    }
    throw TruncationError("log_qpochhammer: max_terms reached before tolerance");
}

double qpochhammer(double z, double w, const Truncation& trunc) {
    return std::exp(log_qpochhammer(z, w, trunc));
}

double log_theta(double w, double z, const Truncation& trunc) {
    if (!(w > 0.0) || w >= 1.0)
        throw std::domain_error("log_theta: need 0 < w < 1");
    if (!(z > 0.0) || z >= 1.0)
        throw std::domain_error("log_theta: need 0 < z < 1");
    double wz = w / z;
    if (wz >= 1.0)
        throw std::domain_error("log_theta: need w/z < 1");
    return log_qpochhammer(z, w, trunc) + log_qpochhammer(wz, w, trunc) +
           log_qpochhammer(w, w, trunc);
}

double theta(double w, double z, const Truncation& trunc) {
    return std::exp(log_theta(w, z, trunc));
}

std::string coeff_to_string(Coeff c) {
    if (c == 0)
        return "0";
    bool neg = c < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(c) : static_cast<unsigned __int128>(c);
    char buf[48];
    int pos = sizeof(buf);
    while (u > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, buf + sizeof(buf));
    return neg ? "-" + s : s;
}

double coeff_to_double(Coeff c) {
    return static_cast<double>(c);
}

namespace {

Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("qproduct_series: 128-bit coefficient overflow");
    return r;
}

Coeff checked_sub(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("qproduct_series: 128-bit coefficient overflow");
    return r;
}

// In-place multiply by (1 - x^m).
void multiply_one_minus(std::vector<Coeff>& c, int m) {
    for (int k = static_cast<int>(c.size()) - 1; k >= m; --k)
        c[k] = checked_sub(c[k], c[k - m]);
}

// In-place divide by (1 - x^m), i.e. multiply by sum_j x^{jm}.
void divide_one_minus(std::vector<Coeff>& c, int m) {
    for (int k = m; k < static_cast<int>(c.size()); ++k)
        c[k] = checked_add(c[k], c[k - m]);
}

} // namespace

std::vector<Coeff> qproduct_series(const std::vector<QFactor>& factors, int order) {
    if (order < 0)
        throw std::domain_error("qproduct_series: order must be >= 0");

    // Merge exponents in half units, keyed by (step, modulus).
    std::map<std::pair<int, int>, long> half_units;
    for (const QFactor& f : factors) {
        if (f.step < 1 || f.modulus < 1)
            throw std::domain_error("qproduct_series: step and modulus must be >= 1");
        if (f.power.den != 1 && f.power.den != 2)
            throw std::domain_error("qproduct_series: power denominator must be 1 or 2");
        half_units[{f.step, f.modulus}] += static_cast<long>(f.power.num) * (2 / f.power.den);
    }

    for (const auto& [key, hu] : half_units) {
        if (hu % 2 != 0) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "qproduct_series: unpaired half power on (x^%d; x^%d)", key.first,
                          key.second);
            throw std::invalid_argument(msg);
        }
    }

    std::vector<Coeff> coeffs(static_cast<size_t>(order) + 1, Coeff{0});
    coeffs[0] = 1;
    for (const auto& [key, hu] : half_units) {
        long e = hu / 2;
        if (e == 0)
            continue;
        for (int m = key.first; m <= order; m += key.second) {
            for (long rep = 0; rep < std::labs(e); ++rep) {
                if (e > 0)
                    multiply_one_minus(coeffs, m);
                else
                    divide_one_minus(coeffs, m);
            }
        }
    }
    return coeffs;
}

} // namespace ctment
