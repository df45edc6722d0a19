// Partition function Z^{(i,kappa)}(x) of the spin-kappa/2 vertex model with
// boundary ground-state label i, computed three independent ways: theta
// quotient, product of elementary blocks T(a,b), and exact power-series
// spectrum of the corner-transfer-matrix Hamiltonian.

#pragma once

#include <vector>

#include "ctment/qseries.hpp"

namespace ctment {

// Largest kappa accepted. Block counts only grow linearly with kappa, so the
// cap exists for sanity rather than physics; overridable at runtime.
int kappa_cap();
void set_kappa_cap(int cap);

// (kappa, i, nome): one lattice model at one coupling. kappa >= 1 is twice
// the spin; i in {0..kappa} labels the frozen boundary configuration.
class ModelPoint {
public:
    ModelPoint(int kappa, int boundary_i, Nome nome);

    int kappa() const { return kappa_; }
    int boundary_i() const { return boundary_i_; }
    int boundary_i_bar() const { return kappa_ - boundary_i_; }
    const Nome& nome() const { return nome_; }

private:
    int kappa_;
    int boundary_i_;
    Nome nome_;
};

// Elementary block T(a,b) = (x^a;x^b)_inf (x^{b-a};x^b)_inf raised to a
// rational power. Invariant: 0 < a < b; power is one of +1, -1, -1/2.
struct BlockFactor {
    int a = 1;
    int b = 2;
    Rational power{1, 1};
};

// The block factorisation of Z^{(i,kappa)}: numerator block first, then the
// denominator blocks with negative powers. Emitted verbatim, without
// algebraic simplification; cancellations are left to the numerics.
std::vector<BlockFactor> block_decomposition(int kappa, int boundary_i);

// T(a,b) at the given nome, in log space.
double log_block_value(int a, int b, const Nome& nome, const Truncation& trunc = {});
double block_value(int a, int b, const Nome& nome, const Truncation& trunc = {});

// Z^{(i,kappa)} as the theta quotient theta_{x^{2(kappa+2)}}(x^{2(i+1)}) / theta_{x^4}(x^2).
double log_partition_theta(const ModelPoint& point, const Truncation& trunc = {});
double partition_theta(const ModelPoint& point, const Truncation& trunc = {});

// Z^{(i,kappa)} as prod_j T(a_j,b_j)^{e_j} over the block decomposition.
double log_partition_blocks(const ModelPoint& point, const Truncation& trunc = {});
double partition_blocks(const ModelPoint& point, const Truncation& trunc = {});

// Corner-transfer-matrix eigenvalue degeneracies d_0..d_N, where d_n is the
// coefficient of x^{2n} in Z^{(i,kappa)}. d_0 = 1 and all entries are
// nonnegative integers.
class SpectrumTable {
public:
    explicit SpectrumTable(std::vector<Coeff> degeneracies);

    int order() const { return static_cast<int>(degeneracies_.size()) - 1; }
    Coeff degeneracy(int n) const;
    const std::vector<Coeff>& degeneracies() const { return degeneracies_; }

private:
    std::vector<Coeff> degeneracies_;
};

// Exact expansion of Z^{(i,kappa)} to order N in x^2, via the block
// decomposition with the half powers eliminated through
// (x^{b/2};x^b)_inf = T(b/2,b)^{1/2}.
SpectrumTable ctm_spectrum(int kappa, int boundary_i, int order);

} // namespace ctment
