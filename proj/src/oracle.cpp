#include "xpjost/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xpjost/errors.hpp"

namespace xpjost {

namespace {

constexpr cplx kI{0.0, 1.0};

const PotentialSpec& second_potential(const ModelSpec& m) {
    static const PotentialSpec one = ConstantOne{};
    return m.kind == ModelKind::M1 ? one : m.b;
}

}  // namespace

HermitianKernel build_kernel(const ModelSpec& m, double L, int n) {
    if (n < 2) throw DomainError("build_kernel: n must be at least 2");
    if (!(L > 0.0) || std::isinf(L)) throw DomainError("build_kernel: L must be finite and positive");
    HermitianKernel k;
    k.n = n;
    k.L = L;
    k.h = L / n;
    std::vector<double> a(n), b(n);
    const auto& bp = second_potential(m);
    for (int j = 0; j < n; ++j) {
        a[j] = eval_q(m.a, k.node(j));
        b[j] = eval_q(bp, k.node(j));
    }
    k.entries.assign(static_cast<std::size_t>(n) * n, 0.0);
    const cplx scale = kI * (k.h / 2.0);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            const double sign = j > l ? 1.0 : (j < l ? -1.0 : 0.0);
            k.entries[static_cast<std::size_t>(j) * n + l] = scale * (sign + a[j] * b[l] - b[j] * a[l]);
        }
    return k;
}

double hermiticity_residual(const HermitianKernel& k) {
    double worst = 0.0;
    for (int j = 0; j < k.n; ++j)
        for (int l = 0; l < k.n; ++l) worst = std::max(worst, std::abs(k(j, l) - std::conj(k(l, j))));
    return worst;
}

EigenResult eigen(const HermitianKernel& k, const JacobiOptions& opts) {
    const int n = k.n;
    std::vector<cplx> A = k.entries;
    auto at = [&](int r, int c) -> cplx& { return A[static_cast<std::size_t>(r) * n + c]; };
    // Rows of Vt are the eigenvectors, so rotations touch contiguous memory.
    std::vector<cplx> Vt(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) Vt[static_cast<std::size_t>(j) * n + j] = 1.0;

    double total = 0.0;
    for (const auto& v : A) total += std::norm(v);
    const double scale = std::sqrt(total);

    auto off_norm = [&] {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (p != q) s += std::norm(at(p, q));
        return std::sqrt(s);
    };

    EigenResult out;
    for (int sweep = 0;; ++sweep) {
        if (off_norm() <= opts.tolerance * scale || scale == 0.0) {
            out.sweeps = sweep;
            break;
        }
        if (sweep >= opts.max_sweeps)
            throw ConvergenceError("eigen: Jacobi did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx b = at(p, q);
                const double ab = std::abs(b);
                if (ab <= 1e-300 || ab < 1e-18 * scale) continue;
                const cplx e = b / ab;
                const double app = at(p, p).real(), aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * ab);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                const cplx se = s * e, sec = s * std::conj(e);
                // Rows: U^H A; the Hermitian mirror then gives the columns of U^H A U.
                cplx* rp = &at(p, 0);
                cplx* rq = &at(q, 0);
                for (int j = 0; j < n; ++j) {
                    const cplx apj = rp[j], aqj = rq[j];
                    rp[j] = c * apj - se * aqj;
                    rq[j] = sec * apj + c * aqj;
                }
                for (int j = 0; j < n; ++j) {
                    if (j == p || j == q) continue;
                    at(j, p) = std::conj(rp[j]);
                    at(j, q) = std::conj(rq[j]);
                }
                at(p, p) = app - t * ab;
                at(q, q) = aqq + t * ab;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                cplx* vp = &Vt[static_cast<std::size_t>(p) * n];
                cplx* vq = &Vt[static_cast<std::size_t>(q) * n];
                for (int j = 0; j < n; ++j) {
                    const cplx x = vp[j], y = vq[j];
                    vp[j] = c * x - sec * y;
                    vq[j] = se * x + c * y;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return at(x, x).real() < at(y, y).real(); });
    for (int idx : order) {
        out.values.push_back(at(idx, idx).real());
        out.vectors.emplace_back(Vt.begin() + static_cast<std::ptrdiff_t>(idx) * n,
                                 Vt.begin() + static_cast<std::ptrdiff_t>(idx + 1) * n);
    }
    return out;
}

std::vector<double> energies(const EigenResult& r) {
    std::vector<double> out;
    for (double mu : r.values) {
        if (mu == 0.0) throw DomainError("energies: zero eigenvalue of the inverse Hamiltonian");
        out.push_back(1.0 / mu);
    }
    return out;
}

double localization_diagnostic(const std::vector<cplx>& eigvec, const HermitianKernel& k) {
    if (static_cast<int>(eigvec.size()) != k.n) throw DomainError("localization_diagnostic: size mismatch");
    double total = 0.0, tail = 0.0;
    const int start = (3 * k.n) / 4;
    for (int j = 0; j < k.n; ++j) {
        const double w = std::norm(eigvec[j]);
        total += w;
        if (j >= start) tail += w;
    }
    if (!(total > 0.0)) throw DomainError("localization_diagnostic: zero vector");
    return tail / total;
}

CrossCheckReport cross_check(const ModelSpec& m, double L, int n, int k_levels) {
    if (k_levels < 1) throw DomainError("cross_check: k_levels must be positive");
    const HermitianKernel k = build_kernel(m, L, n);
    const EigenResult r = eigen(k);
    const std::vector<double> E = energies(r);
    std::vector<int> order(E.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return std::abs(E[x]) < std::abs(E[y]); });
    order.resize(std::min<std::size_t>(order.size(), k_levels));
    std::sort(order.begin(), order.end(), [&](int x, int y) { return E[x] < E[y]; });

    ModelSpec mL = m;
    mL.L = L;
    CrossCheckReport rep;
    rep.n = n;
    rep.L = L;
    for (int idx : order) {
        const double res = std::abs(eigencondition(mL, E[idx]));
        rep.energies.push_back(E[idx]);
        rep.residuals.push_back(res);
        rep.localization.push_back(localization_diagnostic(r.vectors[idx], k));
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

std::vector<ConvergenceRow> grid_convergence(const ModelSpec& m, double L, int n0, int doublings, int k_levels) {
    std::vector<ConvergenceRow> rows;
    int n = n0;
    for (int i = 0; i <= doublings; ++i, n *= 2) {
        const CrossCheckReport rep = cross_check(m, L, n, k_levels);
        ConvergenceRow row{n, rep.max_residual, 0.0};
        if (!rows.empty() && rep.max_residual > 0.0) row.ratio = rows.back().max_residual / rep.max_residual;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace xpjost
