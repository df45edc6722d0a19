#include "ctment/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace ctment {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPi2 = kPi * kPi;

// theta3(0,q) = 1 + 2 sum_{n>=1} q^{n^2}
double theta3_null(double q) {
    double sum = 1.0;
    double qp = 1.0;
    for (int n = 1; n < 64; ++n) {
        qp *= std::pow(q, 2 * n - 1); // q^{n^2} = q^{(n-1)^2} * q^{2n-1}
        if (qp < 1e-18)
            break;
        sum += 2.0 * qp;
    }
    return sum;
}

// theta4(0,q) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2}
double theta4_null(double q) {
    double sum = 1.0;
    double qp = 1.0;
    double sign = -1.0;
    for (int n = 1; n < 64; ++n) {
        qp *= std::pow(q, 2 * n - 1);
        if (qp < 1e-18)
            break;
        sum += 2.0 * sign * qp;
        sign = -sign;
    }
    return sum;
}

// theta2(0,q) / (2 q^{1/4}) = sum_{n>=0} q^{n(n+1)}
double theta2_null_reduced(double q) {
    double sum = 1.0;
    double qp = 1.0;
    for (int n = 1; n < 64; ++n) {
        qp *= std::pow(q, 2 * n); // q^{n(n+1)} = q^{(n-1)n} * q^{2n}
        if (qp < 1e-18)
            break;
        sum += qp;
    }
    return sum;
}

// theta3 - theta4 = 4 (q + q^9 + q^25 + ...): stable small difference.
double theta34_null_gap(double q) {
    double sum = 0.0;
    double qp = q; // q^{(2j+1)^2}, j = 0
    for (int j = 0; j < 64; ++j) {
        sum += qp;
        if (qp < 1e-18 * sum)
            break;
        qp *= std::pow(q, 8 * (j + 1)); // (2j+3)^2 - (2j+1)^2 = 8(j+1)
    }
    return 4.0 * sum;
}

double richardson2(double e1, double v1, double e2, double v2) {
    // model v(e) = L + c e, e1 < e2
    return (e2 * v1 - e1 * v2) / (e2 - e1);
}

} // namespace

double central_charge(int kappa) {
    if (kappa < 1)
        throw std::domain_error("central_charge: kappa must be >= 1");
    return 3.0 * kappa / (kappa + 2.0);
}

BoundaryEntropy boundary_g(int kappa, int boundary_i) {
    if (kappa < 1)
        throw std::domain_error("boundary_g: kappa must be >= 1");
    if (boundary_i < 0 || boundary_i > kappa)
        throw std::domain_error("boundary_g: i must lie in {0..kappa}");
    double g = std::sin(kPi * (boundary_i + 1.0) / (kappa + 2.0)) /
               std::sin(kPi / (kappa + 2.0));
    return {kappa, boundary_i, g, std::log(g)};
}

double log_conjugate_modulus(double epsilon) {
    if (!(epsilon > 0.0))
        throw std::domain_error("log_conjugate_modulus: need epsilon > 0");
    if (epsilon > kPi) {
        // Direct null series at nome q = exp(-eps) < e^{-pi}.
        double q = std::exp(-epsilon);
        return 2.0 * (std::log(theta4_null(q)) - std::log(theta3_null(q)));
    }
    // Conjugate nome qt = exp(-pi^2/eps) <= e^{-pi}; the modular transform
    // swaps theta4 <-> theta2, so k' = 4 sqrt(qt) (s2/s3)^2. Work with
    // ln qt directly; qt itself may underflow for small eps.
    double lqt = -kPi2 / epsilon;
    double qt = std::exp(lqt);
    double s2 = theta2_null_reduced(qt);
    double s3 = theta3_null(qt);
    return std::log(4.0) + 0.5 * lqt + 2.0 * (std::log(s2) - std::log(s3));
}

double conjugate_modulus(double epsilon) {
    return std::exp(log_conjugate_modulus(epsilon));
}

double log_correlation_length(double epsilon, CorrelationMode mode) {
    if (!(epsilon > 0.0))
        throw std::domain_error("log_correlation_length: need epsilon > 0");
    if (mode == CorrelationMode::asymptotic)
        return kPi2 / (2.0 * epsilon);

    if (epsilon > kPi) {
        // k' approaches 1 here; build 1 - k' from theta3 - theta4 to avoid
        // cancellation in xi^{-1} = -(1/2) ln((1-k')/(1+k')).
        double q = std::exp(-epsilon);
        double th3 = theta3_null(q);
        double th4 = theta4_null(q);
        double kp = (th4 * th4) / (th3 * th3);
        double one_minus_kp = theta34_null_gap(q) * (th3 + th4) / (th3 * th3);
        double inv_xi = -0.5 * (std::log(one_minus_kp) - std::log1p(kp));
        return -std::log(inv_xi);
    }

    double lkp = log_conjugate_modulus(epsilon);
    if (lkp < -19.0)
        return -lkp; // atanh(k') = k'(1 + k'^2/3 + ...), correction below 1e-17
    double kp = std::exp(lkp);
    return -std::log(std::atanh(kp));
}

const std::string& modulus_convention() {
    static const std::string convention =
        "elliptic nome q = x = exp(-eps); k' = (theta2/theta3)^2 at the conjugate nome "
        "exp(-pi^2/eps), equivalently (theta4/theta3)^2 at nome x; fixed so that "
        "ln xi -> pi^2/(2 eps) as eps -> 0";
    return convention;
}

ScalingFit fit_scaling(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 3)
        throw std::invalid_argument("fit_scaling: need at least 3 samples");
    for (const auto& [eps, s] : samples)
        if (!(eps > 0.0))
            throw std::invalid_argument("fit_scaling: eps values must be > 0");
    std::sort(samples.begin(), samples.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.first > rhs.first; });

    const size_t n = samples.size();
    double u_min = 1.0 / samples.back().first;
    double u_max = u_min;
    double u_mean = 0.0, s_mean = 0.0;
    for (const auto& [eps, s] : samples) {
        double u = 1.0 / eps;
        u_min = std::min(u_min, u);
        u_max = std::max(u_max, u);
        u_mean += u;
        s_mean += s;
    }
    u_mean /= n;
    s_mean /= n;
    if (u_max - u_min <= 1e-9 * std::max(1.0, u_max))
        throw FitError("fit_scaling: eps values nearly coincide, fit ill-conditioned");

    double suu = 0.0, sus = 0.0;
    for (const auto& [eps, s] : samples) {
        double du = 1.0 / eps - u_mean;
        suu += du * du;
        sus += du * (s - s_mean);
    }

    ScalingFit fit;
    fit.slope = sus / suu;
    fit.intercept = s_mean - fit.slope * u_mean;
    fit.c_estimate = 12.0 * fit.slope / kPi2;
    for (const auto& [eps, s] : samples)
        fit.residual_max =
            std::max(fit.residual_max, std::abs(s - (fit.slope / eps + fit.intercept)));
    fit.points_used = std::move(samples);
    return fit;
}

namespace {

// Entropy difference / residual sampled at the two smallest eps, then
// Richardson-extrapolated. The poisson route is the small-eps workhorse.
std::pair<double, double> two_smallest(std::vector<double> eps_list) {
    if (eps_list.size() < 2)
        throw std::invalid_argument("extrapolation: need at least 2 eps values");
    std::sort(eps_list.begin(), eps_list.end());
    if (!(eps_list[0] > 0.0))
        throw std::invalid_argument("extrapolation: eps values must be > 0");
    if (eps_list[1] - eps_list[0] <= 1e-12 * eps_list[1])
        throw std::invalid_argument("extrapolation: duplicate eps values");
    return {eps_list[0], eps_list[1]};
}

} // namespace

double extract_boundary_entropy(int kappa, int boundary_i, std::vector<double> eps_list,
                                const Truncation& trunc) {
    auto [e1, e2] = two_smallest(std::move(eps_list));
    auto diff = [&](double eps) {
        Nome nome = Nome::from_epsilon(eps);
        double si = entropy(ModelPoint(kappa, boundary_i, nome), Method::poisson, trunc).value;
        double s0 = entropy(ModelPoint(kappa, 0, nome), Method::poisson, trunc).value;
        return si - s0;
    };
    return richardson2(e1, diff(e1), e2, diff(e2));
}

double residual_constant(int kappa, int boundary_i, std::vector<double> eps_list,
                         CorrelationMode mode, const Truncation& trunc) {
    auto [e1, e2] = two_smallest(std::move(eps_list));
    const double c = central_charge(kappa);
    const double ln_g = boundary_g(kappa, boundary_i).ln_g;
    auto residual = [&](double eps) {
        Nome nome = Nome::from_epsilon(eps);
        double s = entropy(ModelPoint(kappa, boundary_i, nome), Method::poisson, trunc).value;
        return s - (c / 6.0) * log_correlation_length(eps, mode) - ln_g;
    };
    return richardson2(e1, residual(e1), e2, residual(e2));
}

} // namespace ctment
