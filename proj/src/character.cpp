#include "ctment/character.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>

namespace ctment {

namespace {
std::atomic<int> g_kappa_cap{64};
}

int kappa_cap() {
    return g_kappa_cap.load();
}

void set_kappa_cap(int cap) {
    if (cap < 1)
        throw std::domain_error("set_kappa_cap: cap must be >= 1");
    g_kappa_cap.store(cap);
}

namespace {

void validate_labels(int kappa, int boundary_i) {
    if (kappa < 1)
        throw std::domain_error("kappa must be >= 1");
    if (kappa > kappa_cap())
        throw std::domain_error("kappa exceeds kappa_cap(); raise it with set_kappa_cap");
    if (boundary_i < 0 || boundary_i > kappa)
        throw std::domain_error("boundary label i must lie in {0..kappa}");
}

} // namespace

ModelPoint::ModelPoint(int kappa, int boundary_i, Nome nome)
    : kappa_(kappa), boundary_i_(boundary_i), nome_(nome) {
    validate_labels(kappa, boundary_i);
}

std::vector<BlockFactor> block_decomposition(int kappa, int boundary_i) {
    validate_labels(kappa, boundary_i);
    const int b = 2 * (kappa + 2);

    std::vector<BlockFactor> blocks;
    blocks.push_back({2 * (boundary_i + 1), b, {1, 1}});
    blocks.push_back({2, 4, {-1, 2}});
    if (kappa % 2 == 0) {
        blocks.push_back({kappa + 2, b, {-1, 2}});
        for (int j = 1; j <= kappa / 2; ++j)
            blocks.push_back({2 * j, b, {-1, 1}});
    } else {
        for (int j = 1; j <= (kappa + 1) / 2; ++j)
            blocks.push_back({2 * j, b, {-1, 1}});
    }
    return blocks;
}

double log_block_value(int a, int b, const Nome& nome, const Truncation& trunc) {
    if (!(0 < a && a < b))
        throw std::domain_error("log_block_value: need 0 < a < b");
    const double x = nome.x();
    const double xb = std::pow(x, b);
    return log_qpochhammer(std::pow(x, a), xb, trunc) +
           log_qpochhammer(std::pow(x, b - a), xb, trunc);
}

double block_value(int a, int b, const Nome& nome, const Truncation& trunc) {
    return std::exp(log_block_value(a, b, nome, trunc));
}

double log_partition_theta(const ModelPoint& point, const Truncation& trunc) {
    const double x = point.nome().x();
    const double w_num = std::pow(x, 2 * (point.kappa() + 2));
    const double z_num = std::pow(x, 2 * (point.boundary_i() + 1));
    return log_theta(w_num, z_num, trunc) - log_theta(x * x * x * x, x * x, trunc);
}

double partition_theta(const ModelPoint& point, const Truncation& trunc) {
    return std::exp(log_partition_theta(point, trunc));
}

double log_partition_blocks(const ModelPoint& point, const Truncation& trunc) {
    double sum = 0.0;
    for (const BlockFactor& blk : block_decomposition(point.kappa(), point.boundary_i()))
        sum += blk.power.value() * log_block_value(blk.a, blk.b, point.nome(), trunc);
    return sum;
}

double partition_blocks(const ModelPoint& point, const Truncation& trunc) {
    return std::exp(log_partition_blocks(point, trunc));
}

SpectrumTable::SpectrumTable(std::vector<Coeff> degeneracies)
    : degeneracies_(std::move(degeneracies)) {
    if (degeneracies_.empty())
        throw std::domain_error("SpectrumTable: empty degeneracy list");
    if (degeneracies_[0] != 1)
        throw std::logic_error("SpectrumTable: d_0 must be 1 (unique ground state)");
    for (const Coeff& d : degeneracies_)
        if (d < 0)
            throw std::logic_error("SpectrumTable: negative degeneracy");
}

Coeff SpectrumTable::degeneracy(int n) const {
    if (n < 0 || n > order())
        throw std::out_of_range("SpectrumTable: index outside 0..order");
    return degeneracies_[static_cast<size_t>(n)];
}

SpectrumTable ctm_spectrum(int kappa, int boundary_i, int order) {
    validate_labels(kappa, boundary_i);
    if (order < 0)
        throw std::domain_error("ctm_spectrum: order must be >= 0");
    if (order > 10000000)
        throw std::domain_error("ctm_spectrum: order beyond any representable spectrum");

    // Split every block into its two q-products. The half powers on
    // T(2,4) and T(kappa+2, 2(kappa+2)) land on self-paired products
    // (a = b - a), so they recombine into integer powers.
    std::vector<QFactor> factors;
    for (const BlockFactor& blk : block_decomposition(kappa, boundary_i)) {
        factors.push_back({blk.a, blk.b, blk.power});
        factors.push_back({blk.b - blk.a, blk.b, blk.power});
    }

    std::vector<Coeff> in_x = qproduct_series(factors, 2 * order);
    std::vector<Coeff> degeneracies(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= 2 * order; ++k) {
        if (k % 2 != 0) {
            if (in_x[static_cast<size_t>(k)] != 0)
                throw std::logic_error("ctm_spectrum: odd power of x in Z, decomposition bug");
            continue;
        }
        Coeff d = in_x[static_cast<size_t>(k)];
        if (d < 0) {
            char msg[96];
            std::snprintf(msg, sizeof(msg),
                          "ctm_spectrum: negative coefficient at x^%d, decomposition bug", k);
            throw std::logic_error(msg);
        }
        degeneracies[static_cast<size_t>(k / 2)] = d;
    }
    return SpectrumTable(std::move(degeneracies));
}

} // namespace ctment
