#include "ctment/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace ctment {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPi2 = kPi * kPi;

struct BlockAccum {
    double value = 0.0;
    double est = 0.0;
    long terms = 0;
};

void validate_block(int a, int b, double epsilon) {
    if (!(0 < a && a < b))
        throw std::domain_error("block entropy: need 0 < a < b");
    if (!(epsilon > 0.0))
        throw std::domain_error("block entropy: need epsilon > 0");
}

// u - sinh(2u)/2 without cancellation, as -sum_{k>=1} 2^{2k} u^{2k+1}/(2k+1)!.
double sinh_defect(double u) {
    double term = 2.0 * u * u * u / 3.0; // k = 1
    double sum = term;
    for (int k = 2; k < 64; ++k) {
        term *= 4.0 * u * u / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return -sum;
}

BlockAccum direct_acc(int a, int b, double epsilon, const Truncation& trunc) {
    validate_block(a, b, epsilon);
    trunc.validate();

    const double cut = trunc.abs_tol / 10.0;
    const double delta = epsilon * b;
    const double ratio = std::exp(-delta);

    BlockAccum acc;
    for (int start : {a, b - a}) {
        double y = epsilon * start;
        for (;;) {
            if (acc.terms >= trunc.max_terms)
                throw TruncationError("block_entropy_direct: max_terms reached before tolerance");
            double fv = entropy_kernel(y);
            acc.value += fv;
            ++acc.terms;
            if (std::abs(fv) < cut)
                break;
            y += delta;
        }
        // First omitted argument is y + delta. |f(y)| <= 2 (1+y) e^{-y} for
        // y >= 0.7 (always true at the stopping point for sane tolerances),
        // and the arguments step by delta.
        double yn = y + delta;
        acc.est += 2.0 * std::exp(-yn) *
                   ((1.0 + yn) / (1.0 - ratio) + delta * ratio / ((1.0 - ratio) * (1.0 - ratio)));
    }
    return acc;
}

// Leading term and closed-form log-sine constant of the resummed series.
// The remaining sum over entropy_kernel_transform_tail converges
// geometrically with ratio exp(-4 pi^2 / (eps b) ... ) at every eps.
BlockAccum poisson_acc(int a, int b, double epsilon, const Truncation& trunc) {
    validate_block(a, b, epsilon);
    trunc.validate();

    const double beta = 2.0 * kPi / (epsilon * b);
    const double lead = -2.0 * kPi2 / (3.0 * epsilon * b);
    const double clausen = std::log(2.0 * std::sin(kPi * a / b));
    const double pref = 4.0 / (epsilon * b);

    BlockAccum acc;
    double sum = 0.0;
    double r_cur = entropy_kernel_transform_tail(beta);
    for (long n = 1;; ++n) {
        if (acc.terms >= trunc.max_terms)
            throw TruncationError("block_entropy_poisson: max_terms reached before tolerance");
        long k = (n * a) % b; // reduce the cosine angle exactly
        sum += pref * r_cur * std::cos(2.0 * kPi * k / b);
        ++acc.terms;
        if (r_cur == 0.0) {
            acc.est = 0.0;
            break;
        }
        double r_next = entropy_kernel_transform_tail(beta * (n + 1.0));
        double q = r_next / r_cur; // the tail is log-convex: later ratios only shrink
        if (q < 1.0) {
            double tail = pref * r_next / (1.0 - q);
            if (tail < trunc.abs_tol / 2.0) {
                acc.est = tail;
                break;
            }
        }
        r_cur = r_next;
    }
    acc.value = lead + clausen + sum;
    acc.est += 1e-16 * (std::abs(lead) + std::abs(clausen) + 1.0);
    return acc;
}

BlockAccum asymptotic_acc(int a, int b, double epsilon) {
    validate_block(a, b, epsilon);
    const double beta = 2.0 * kPi / (epsilon * b);
    BlockAccum acc;
    acc.value = -2.0 * kPi2 / (3.0 * epsilon * b) + std::log(2.0 * std::sin(kPi * a / b));
    // Honest error scale: magnitude of the first omitted correction.
    acc.est = 4.0 / (epsilon * b) * entropy_kernel_transform_tail(beta);
    acc.terms = 1;
    return acc;
}

int spectrum_auto_order(const ModelPoint& point) {
    const double eps = point.nome().epsilon();
    const double c = 3.0 * point.kappa() / (point.kappa() + 2.0);
    double guess = kPi2 * c / (12.0 * eps * eps) + 45.0 / eps + 60.0;
    return std::min(700, static_cast<int>(std::ceil(guess)));
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::direct:
        return "direct";
    case Method::poisson:
        return "poisson";
    case Method::spectrum:
        return "spectrum";
    case Method::asymptotic:
        return "asymptotic";
    }
    return "unknown";
}

double entropy_kernel(double y) {
    if (!(y > 0.0))
        throw std::domain_error("entropy_kernel: need y > 0");
    if (y > 700.0) {
        double e = std::exp(-y); // beyond expm1 overflow; relative error ~ e^{-y}
        return -(1.0 + y) * e;
    }
    return std::log(-std::expm1(-y)) - y / std::expm1(y);
}

double entropy_kernel_transform(double y) {
    y = std::abs(y); // the cosine transform is even
    if (y < 1e-3) {
        // -pi^2/3 + (2 pi^4/45) y^2 - (2 pi^6/315) y^4 + O(y^6)
        double y2 = y * y;
        return -kPi2 / 3.0 + (2.0 * kPi2 * kPi2 / 45.0) * y2 -
               (2.0 * kPi2 * kPi2 * kPi2 / 315.0) * y2 * y2;
    }
    if (y < 1.0) {
        double u = kPi * y;
        double sh = std::sinh(u);
        return (kPi / (2.0 * y)) * sinh_defect(u) / (sh * sh);
    }
    // t = e^{-2 pi y} <= e^{-2 pi}: rewrite through t; no overflow, no cancellation.
    double t = std::exp(-2.0 * kPi * y);
    double omt = 1.0 - t;
    return (kPi / (2.0 * y)) * (4.0 * kPi * y * t - 1.0 + t * t) / (omt * omt);
}

double entropy_kernel_transform_tail(double y) {
    if (!(y > 0.0))
        throw std::domain_error("entropy_kernel_transform_tail: need y > 0");
    double v = 2.0 * kPi * y;
    double t = std::exp(-v);
    if (t == 0.0)
        return 0.0;
    double omt = 1.0 - t;
    // pi t (v - 1 + t) / (y (1-t)^2); v - 1 + t via expm1 keeps small v accurate.
    return kPi * t * (v + std::expm1(-v)) / (y * omt * omt);
}

double block_entropy_direct(int a, int b, double epsilon, const Truncation& trunc) {
    return direct_acc(a, b, epsilon, trunc).value;
}

double block_entropy_poisson(int a, int b, double epsilon, const Truncation& trunc) {
    return poisson_acc(a, b, epsilon, trunc).value;
}

double block_entropy_asymptotic(int a, int b, double epsilon) {
    return asymptotic_acc(a, b, epsilon).value;
}

EntropyResult entropy(const ModelPoint& point, Method method, const Truncation& trunc) {
    trunc.validate();

    if (method == Method::spectrum) {
        int order = spectrum_auto_order(point);
        for (;;) {
            try {
                return entropy_from_spectrum(point, order, trunc);
            } catch (const TailTooHeavyError&) {
                if (order >= 700)
                    throw;
                order = std::min(700, 2 * order);
            }
        }
    }

    const double eps = point.nome().epsilon();
    EntropyResult result;
    result.method = method;
    for (const BlockFactor& blk : block_decomposition(point.kappa(), point.boundary_i())) {
        BlockAccum acc;
        switch (method) {
        case Method::direct:
            acc = direct_acc(blk.a, blk.b, eps, trunc);
            break;
        case Method::poisson:
            acc = poisson_acc(blk.a, blk.b, eps, trunc);
            break;
        case Method::asymptotic:
            acc = asymptotic_acc(blk.a, blk.b, eps);
            break;
        case Method::spectrum:
            break; // handled above
        }
        double p = blk.power.value();
        result.value += p * acc.value;
        result.est_error += std::abs(p) * acc.est;
        result.terms_used += acc.terms;
    }
    result.est_error += 5e-15 * (1.0 + std::abs(result.value));

    // The exact routes must produce a nonnegative entropy; the asymptotic
    // closed form may legitimately go negative once eps is order 1.
    if (method != Method::asymptotic && result.value < 0.0) {
        if (result.value < -(10.0 * result.est_error + 1e-12))
            throw std::logic_error("entropy: negative total entropy (decomposition bug)");
        result.value = 0.0;
    }
    return result;
}

EntropyResult entropy_from_spectrum(const ModelPoint& point, int order, const Truncation& trunc) {
    trunc.validate();
    if (order < 0)
        throw std::domain_error("entropy_from_spectrum: order must be >= 0");
    if (point.nome().x() > 0.85)
        throw TailTooHeavyError(
            "entropy_from_spectrum: x > 0.85, probability tail too heavy at any practical order");

    const SpectrumTable table = ctm_spectrum(point.kappa(), point.boundary_i(), order);
    const double log_x2 = -2.0 * point.nome().epsilon();
    const double log_z = log_partition_theta(point, trunc);

    // Level n holds d_n eigenvalues q_n = x^{2n}/Z each, so
    // S = -sum_n d_n q_n ln q_n and the level weight is p_n = d_n q_n.
    double weight_sum = 0.0;
    double plogq_sum = 0.0;
    double p_last = 0.0;
    double lq_last = 0.0;
    double ratio_max = 0.0;
    for (int n = 0; n <= order; ++n) {
        Coeff d = table.degeneracy(n);
        if (d == 0)
            continue;
        double lq = n * log_x2 - log_z;
        double p = coeff_to_double(d) * std::exp(lq);
        weight_sum += p;
        plogq_sum -= p * lq;
        if (p_last > 0.0 && n >= order - 4)
            ratio_max = std::max(ratio_max, p / p_last);
        p_last = p;
        lq_last = lq;
    }

    double tail_est = 0.0;
    if (p_last > 0.0) {
        if (ratio_max >= 0.999)
            throw TailTooHeavyError("entropy_from_spectrum: probability tail not decaying at this order");
        if (ratio_max > 0.0)
            tail_est = p_last * ratio_max / (1.0 - ratio_max);
    }
    if (tail_est > trunc.abs_tol)
        throw TailTooHeavyError("entropy_from_spectrum: estimated tail mass above abs_tol; raise the order");

    // Renormalise every eigenvalue over the truncated window, q -> q/W:
    // S = plogq_sum / W + ln W.
    double value = plogq_sum / weight_sum + std::log(weight_sum);
    double est = tail_est * (1.0 + std::abs(lq_last)) +
                 std::abs(1.0 - weight_sum) * (1.0 + std::abs(value)) +
                 5e-15 * (1.0 + std::abs(value));

    if (value < 0.0) {
        if (value < -(10.0 * est + 1e-12))
            throw std::logic_error("entropy_from_spectrum: negative entropy (bug)");
        value = 0.0;
    }
    return {value, Method::spectrum, est, order};
}

double entropy_asymptotic(const ModelPoint& point) {
    const double eps = point.nome().epsilon();
    const double kp2 = point.kappa() + 2.0;
    const double c = 3.0 * point.kappa() / kp2;
    return kPi2 / (12.0 * eps) * c +
           std::log(std::sqrt(2.0) * std::sin(kPi * (point.boundary_i() + 1.0) / kp2) /
                    std::sqrt(kp2));
}

} // namespace ctment
