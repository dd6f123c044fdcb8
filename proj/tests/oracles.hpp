// Test-only reference implementations, independent of the library paths
// they are used to check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "attsp/corpus.hpp"
#include "attsp/factorizer.hpp"
#include "attsp/seeding.hpp"

namespace oracles {

using attsp::SparseRowMatrix;

inline SparseRowMatrix random_sparse(int n, int m, double density,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (unit(rng) < density) trips.emplace_back(i, j, unit(rng));
    }
  }
  SparseRowMatrix V(n, m);
  V.setFromTriplets(trips.begin(), trips.end());
  return V;
}

// Binary mask with no all-zero rows.
inline Eigen::MatrixXd random_mask(int n, int k, double keep,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0, 1);
  Eigen::MatrixXd L(n, k);
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < k; ++j) {
      L(i, j) = unit(rng) < keep ? 1.0 : 0.0;
      any = any || L(i, j) > 0;
    }
    if (!any) L(i, static_cast<int>(rng() % k)) = 1.0;
  }
  return L;
}

inline attsp::DocumentTermMatrix wrap_dtm(const SparseRowMatrix& V) {
  attsp::DocumentTermMatrix dtm;
  for (int i = 0; i < V.rows(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "u%04d", i);
    dtm.rows.emplace_back(buf);
  }
  for (int j = 0; j < V.cols(); ++j) {
    std::string t = "t" + std::to_string(j);
    dtm.vocab.index[t] = j;
    dtm.vocab.terms.push_back(t);
    dtm.vocab.document_frequency.push_back(1);
  }
  dtm.values = V;
  return dtm;
}

inline attsp::SupervisionMatrix wrap_mask(const Eigen::MatrixXd& L,
                                          const std::vector<std::string>& rows) {
  attsp::SupervisionMatrix sup;
  sup.rows = rows;
  sup.values = L;
  return sup;
}

// Element-wise loop Frobenius objective, no Eigen products.
inline double loop_objective(const SparseRowMatrix& V, const Eigen::MatrixXd& W,
                             const Eigen::MatrixXd& H,
                             const Eigen::MatrixXd& L) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(V);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      double recon = 0.0;
      for (Eigen::Index t = 0; t < W.cols(); ++t) {
        recon += W(i, t) * L(i, t) * H(t, j);
      }
      const double d = dense(i, j) - recon;
      sum += d * d;
    }
  }
  return sum;
}

// Plain Lee-Seung multiplicative NMF on a dense copy; per-iteration
// objective trace.
inline std::vector<double> plain_nmf_trace(const SparseRowMatrix& Vs,
                                           Eigen::MatrixXd W,
                                           Eigen::MatrixXd H, int iterations,
                                           double eps) {
  const Eigen::MatrixXd V = Eigen::MatrixXd(Vs);
  std::vector<double> trace;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::MatrixXd numW = V * H.transpose();
    const Eigen::MatrixXd denW = W * (H * H.transpose());
    W = W.cwiseProduct(numW.cwiseQuotient(
        denW + Eigen::MatrixXd::Constant(W.rows(), W.cols(), eps)));
    const Eigen::MatrixXd numH = W.transpose() * V;
    const Eigen::MatrixXd denH = (W.transpose() * W) * H;
    H = H.cwiseProduct(numH.cwiseQuotient(
        denH + Eigen::MatrixXd::Constant(H.rows(), H.cols(), eps)));
    trace.push_back((V - W * H).squaredNorm());
  }
  return trace;
}

// Textbook LOWESS: tricube-weighted local linear fit over the q nearest
// neighbors, bisquare robustness, quadratic-time loops.
inline std::vector<double> reference_lowess(const std::vector<double>& x,
                                            const std::vector<double>& y,
                                            double fraction, int robust) {
  const std::size_t n = x.size();
  const std::size_t q = std::max<std::size_t>(
      2, std::min(n, static_cast<std::size_t>(
                         std::ceil(fraction * static_cast<double>(n)))));
  std::vector<double> delta(n, 1.0), fitted(n, 0.0);
  for (int iter = 0; iter <= robust; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> dist(n);
      for (std::size_t j = 0; j < n; ++j) dist[j] = std::abs(x[j] - x[i]);
      std::vector<double> sorted = dist;
      std::nth_element(sorted.begin(), sorted.begin() + (q - 1), sorted.end());
      const double dq = sorted[q - 1];
      double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[j] > dq) continue;
        double w;
        if (dq > 0) {
          const double u = dist[j] / dq;
          if (u >= 1.0) {
            w = 0.0;
          } else {
            const double c = 1 - u * u * u;
            w = c * c * c;
          }
        } else {
          w = 1.0;
        }
        w *= delta[j];
        const double dx = x[j] - x[i];
        sw += w;
        swx += w * dx;
        swy += w * y[j];
        swxx += w * dx * dx;
        swxy += w * dx * y[j];
      }
      const double det = sw * swxx - swx * swx;
      if (sw <= 0) {
        fitted[i] = y[i];
      } else if (std::abs(det) <= 1e-12 * sw * swxx || swxx == 0.0) {
        fitted[i] = swy / sw;
      } else {
        fitted[i] = (swxx * swy - swx * swxy) / det;
      }
    }
    if (iter == robust) break;
    std::vector<double> absres(n);
    for (std::size_t i = 0; i < n; ++i) absres[i] = std::abs(y[i] - fitted[i]);
    std::vector<double> med = absres;
    std::sort(med.begin(), med.end());
    const double s = n % 2 == 1 ? med[n / 2]
                                : 0.5 * (med[n / 2 - 1] + med[n / 2]);
    if (s <= 0) break;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = absres[i] / (6.0 * s);
      delta[i] = u >= 1.0 ? 0.0 : (1 - u * u) * (1 - u * u);
    }
  }
  return fitted;
}

// Pairwise-reachability largest SCC: node set whose members all reach each
// other, computed from the full reachability closure.
inline std::vector<int> reachability_scc(
    int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) reach[i][i] = true;
  for (auto [u, v] : edges) reach[u][v] = true;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] != -1) continue;
    comp[i] = ncomp;
    for (int j = i + 1; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) comp[j] = ncomp;
    }
    ++ncomp;
  }
  std::vector<std::vector<int>> members(ncomp);
  for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);
  std::size_t best = 0;
  for (std::size_t c = 1; c < members.size(); ++c) {
    if (members[c].size() > members[best].size() ||
        (members[c].size() == members[best].size() &&
         members[c] < members[best])) {
      best = c;
    }
  }
  return members[best];
}

// Plain Pearson over explicit pair lists.
inline double pearson(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracles
