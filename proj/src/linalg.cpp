#include "lgq/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace lgq {

void jacobi_eigen(std::vector<std::vector<double>> S, std::vector<double>& evals,
                  std::vector<std::vector<double>>& V) {
    const int n = (int)S.size();
    V.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) V[i][i] = 1.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += S[p][q] * S[p][q];
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(S[p][q]) < 1e-300) continue;
                double theta = (S[q][q] - S[p][p]) / (2.0 * S[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double skp = S[k][p], skq = S[k][q];
                    S[k][p] = c * skp - s * skq;
                    S[k][q] = s * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    double spk = S[p][k], sqk = S[q][k];
                    S[p][k] = c * spk - s * sqk;
                    S[q][k] = s * spk + c * sqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V[k][p], vkq = V[k][q];
                    V[k][p] = c * vkp - s * vkq;
                    V[k][q] = s * vkp + c * vkq;
                }
            }
    }
    evals.resize(n);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = S[i][i];
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<std::vector<double>> Vs(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
        evals[j] = d[idx[j]];
        for (int i = 0; i < n; ++i) Vs[i][j] = V[i][idx[j]];
    }
    V = Vs;
}

std::vector<std::vector<double>> nullspace(const std::vector<std::vector<double>>& A,
                                           double rel_tol) {
    const int m = (int)A.size();
    const int n = m ? (int)A[0].size() : 0;
    std::vector<std::vector<double>> G(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < m; ++k) s += A[k][i] * A[k][j];
            G[i][j] = s;
        }
    std::vector<double> ev;
    std::vector<std::vector<double>> V;
    jacobi_eigen(G, ev, V);
    // rel_tol is relative to the largest singular value (eigenvalues of G are
    // squared singular values of A).
    double smax = ev.empty() ? 0.0 : std::sqrt(std::max(0.0, ev.back()));
    double cut = std::max(smax * rel_tol, 1e-300);
    std::vector<std::vector<double>> basis;
    for (int j = 0; j < n; ++j)
        if (std::sqrt(std::max(0.0, ev[j])) <= cut) {
            std::vector<double> col(n);
            for (int i = 0; i < n; ++i) col[i] = V[i][j];
            basis.push_back(col);
        }
    return basis;
}

} // namespace lgq
