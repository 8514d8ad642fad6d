#pragma once

#include <complex>
#include <vector>

#include "xpjost/jost.hpp"

namespace xpjost {

/// Midpoint discretization of the inverse Hamiltonian on q_j = (j + 1/2) h,
/// M_jk = (ih/2)[sign(q_j − q_k) + a_j b_k − b_j a_k], sign(0) = 0.
struct HermitianKernel {
    int n = 0;
    double L = 0.0;
    double h = 0.0;
    std::vector<cplx> entries;  // row-major n x n

    cplx operator()(int j, int k) const { return entries[static_cast<std::size_t>(j) * n + k]; }
    double node(int j) const { return (j + 0.5) * h; }
};

/// n >= 2 nodes on [0, L] (L finite).
HermitianKernel build_kernel(const ModelSpec& m, double L, int n);

/// max |M_jk − conj(M_kj)|.
double hermiticity_residual(const HermitianKernel& k);

struct JacobiOptions {
    int max_sweeps = 60;
    double tolerance = 1e-12;  // off-diagonal Frobenius norm relative to ‖M‖_F
};

struct EigenResult {
    std::vector<double> values;              // ascending
    std::vector<std::vector<cplx>> vectors;  // vectors[i] pairs with values[i]
    int sweeps = 0;
};

/// Cyclic Jacobi diagonalization. Throws ConvergenceError past max_sweeps.
EigenResult eigen(const HermitianKernel& k, const JacobiOptions& opts = {});

/// E = 1/μ for every eigenvalue μ, in the order of the eigenvalues.
std::vector<double> energies(const EigenResult& r);

/// Fraction of Σ|v_j|² carried by the last quarter of the grid. Throws
/// DomainError for a zero vector or a size mismatch.
double localization_diagnostic(const std::vector<cplx>& eigvec, const HermitianKernel& k);

struct CrossCheckReport {
    int n = 0;
    double L = 0.0;
    std::vector<double> energies;      // k_levels smallest |E|, ascending in E
    std::vector<double> residuals;     // |F(E) + F(−E) e^{iEL}|
    std::vector<double> localization;  // localization_diagnostic of each state
    double max_residual = 0.0;
};

CrossCheckReport cross_check(const ModelSpec& m, double L, int n, int k_levels);

struct ConvergenceRow {
    int n = 0;
    double max_residual = 0.0;
    double ratio = 0.0;  // previous max_residual / this one (0 for the first row)
};

/// cross_check at n0, 2 n0, ..., 2^{doublings} n0.
std::vector<ConvergenceRow> grid_convergence(const ModelSpec& m, double L, int n0, int doublings, int k_levels);

}  // namespace xpjost
