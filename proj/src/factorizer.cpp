#include "attsp/factorizer.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>
#include <random>

#include "attsp/errors.hpp"
#include "json.hpp"

namespace attsp {

namespace {

double frobenius_sq(const SparseRowMatrix& V) {
  double s = 0.0;
  for (int i = 0; i < V.outerSize(); ++i) {
    for (SparseRowMatrix::InnerIterator it(V, i); it; ++it) {
      s += it.value() * it.value();
    }
  }
  return s;
}

// ||V - WH||^2 without materializing the dense reconstruction.
double masked_objective(const SparseRowMatrix& V, double v_norm_sq,
                        const Eigen::MatrixXd& W, const Eigen::MatrixXd& H) {
  double cross = 0.0;
  for (int i = 0; i < V.outerSize(); ++i) {
    for (SparseRowMatrix::InnerIterator it(V, i); it; ++it) {
      cross += it.value() * W.row(it.row()).dot(H.col(it.col()));
    }
  }
  const Eigen::MatrixXd gram = W.transpose() * W;
  const Eigen::MatrixXd hht = H * H.transpose();
  return v_norm_sq - 2.0 * cross + gram.cwiseProduct(hht).sum();
}

void check_dims(const SparseRowMatrix& V, const Eigen::MatrixXd& L, int k) {
  if (L.rows() != V.rows() || L.cols() != k) {
    throw DimensionMismatch("supervision matrix does not conform to V and k");
  }
  if (V.rows() < k || V.cols() < k) {
    throw DimensionMismatch("V must have at least k rows and columns");
  }
}

void nndsvd_init(const SparseRowMatrix& V, int k, Eigen::MatrixXd& W,
                 Eigen::MatrixXd& H) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(V);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& U = svd.matrixU();
  const auto& Vt = svd.matrixV();
  const auto& S = svd.singularValues();
  W.setZero(V.rows(), k);
  H.setZero(k, V.cols());
  W.col(0) = std::sqrt(S(0)) * U.col(0).cwiseAbs();
  H.row(0) = std::sqrt(S(0)) * Vt.col(0).cwiseAbs().transpose();
  for (int j = 1; j < k && j < S.size(); ++j) {
    Eigen::VectorXd up = U.col(j).cwiseMax(0.0), un = (-U.col(j)).cwiseMax(0.0);
    Eigen::VectorXd vp = Vt.col(j).cwiseMax(0.0),
                    vn = (-Vt.col(j)).cwiseMax(0.0);
    const double pnorm = up.norm() * vp.norm();
    const double nnorm = un.norm() * vn.norm();
    if (pnorm >= nnorm && pnorm > 0) {
      W.col(j) = std::sqrt(S(j) * pnorm) * up / up.norm();
      H.row(j) = (std::sqrt(S(j) * pnorm) * vp / vp.norm()).transpose();
    } else if (nnorm > 0) {
      W.col(j) = std::sqrt(S(j) * nnorm) * un / un.norm();
      H.row(j) = (std::sqrt(S(j) * nnorm) * vn / vn.norm()).transpose();
    }
  }
  // lift exact zeros so multiplicative updates do not lock them in
  const double floor = dense.mean() / 100.0 + 1e-12;
  W = W.cwiseMax(floor);
  H = H.cwiseMax(floor);
}

}  // namespace

double objective(const SparseRowMatrix& V, const Eigen::MatrixXd& U,
                 const Eigen::MatrixXd& T, const Eigen::MatrixXd& L) {
  if (U.rows() != V.rows() || T.cols() != V.cols() || U.cols() != T.rows() ||
      L.rows() != U.rows() || L.cols() != U.cols()) {
    throw DimensionMismatch("objective: factor dimensions do not conform");
  }
  const Eigen::MatrixXd masked = U.cwiseProduct(L);
  return masked_objective(V, frobenius_sq(V), masked, T);
}

void init_factors(const SparseRowMatrix& V, const FactorizationConfig& config,
                  Eigen::MatrixXd& W, Eigen::MatrixXd& H) {
  if (config.init == FactorInit::nndsvd) {
    nndsvd_init(V, config.k, W, H);
    return;
  }
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double mean =
      V.sum() / (static_cast<double>(V.rows()) * static_cast<double>(V.cols()));
  const double scale = std::sqrt(std::max(mean, 1e-12) / config.k);
  W.resize(V.rows(), config.k);
  H.resize(config.k, V.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      W(i, j) = (1.0 - unit(rng)) * scale;  // (0, 1] * scale
    }
  }
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
      H(i, j) = (1.0 - unit(rng)) * scale;
    }
  }
}

FactorModel fit(const DocumentTermMatrix& dtm, const SupervisionMatrix& sup,
                const FactorizationConfig& config) {
  const SparseRowMatrix& V = dtm.values;
  const Eigen::MatrixXd& L = sup.values;
  check_dims(V, L, config.k);
  for (int i = 0; i < V.outerSize(); ++i) {
    for (SparseRowMatrix::InnerIterator it(V, i); it; ++it) {
      if (it.value() < 0)
        throw NonNegativityViolation("V has a negative entry");
    }
  }
  if ((L.rowwise().sum().array() == 0.0).any()) {
    throw Error("supervision matrix has an all-zero row");
  }

  Eigen::MatrixXd W, H;
  init_factors(V, config, W, H);
  W = W.cwiseProduct(L);  // mask holds from the first iterate on

  const double v_norm_sq = frobenius_sq(V);
  const double eps = config.epsilon;

  FactorModel model;
  model.users = dtm.rows;
  model.terms = dtm.vocab.terms;

  double prev = masked_objective(V, v_norm_sq, W, H);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    // W <- L o W o (V H^T) / ((W o L) H H^T + eps)
    const Eigen::MatrixXd numW = V * H.transpose();
    const Eigen::MatrixXd denW = W * (H * H.transpose());
    W = L.cwiseProduct(W.cwiseProduct(numW.cwiseQuotient(
        denW.array().cwiseMax(0.0).matrix() +
        Eigen::MatrixXd::Constant(W.rows(), W.cols(), eps))));

    // H <- H o (W^T V) / (W^T W H + eps)
    const Eigen::MatrixXd numH = (V.transpose() * W).transpose();
    const Eigen::MatrixXd denH = (W.transpose() * W) * H;
    H = H.cwiseProduct(numH.cwiseQuotient(
        denH + Eigen::MatrixXd::Constant(H.rows(), H.cols(), eps)));

    const double cur = masked_objective(V, v_norm_sq, W, H);
    model.objective_trace.push_back(cur);
    model.iterations_run = iter + 1;
    const double rel = std::abs(prev - cur) / std::max(prev, eps);
    if (rel < config.relative_tolerance) {
      model.converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }

  model.user_attitudes = std::move(W);
  model.term_attitudes = std::move(H);
  return normalize_model(std::move(model));
}

FactorModel normalize_model(FactorModel model) {
  Eigen::MatrixXd& U = model.user_attitudes;
  Eigen::MatrixXd& T = model.term_attitudes;
  for (Eigen::Index j = 0; j < T.rows(); ++j) {
    const double s = T.row(j).lpNorm<1>();
    if (s == 0.0) {
      throw DegenerateTopic("topic " + std::to_string(j) +
                            " has an all-zero term row");
    }
    T.row(j) /= s;
    U.col(j) *= s;
  }
  const double clip = std::max(1.0, U.maxCoeff());
  U /= clip;
  model.clip_factor = clip;
  return model;
}

void save_model_json(const FactorModel& model,
                     const FactorizationConfig& config,
                     const std::string& path) {
  nlohmann::json j;
  j["users"] = model.users;
  j["terms"] = model.terms;
  auto to_rows = [](const Eigen::MatrixXd& M) {
    std::vector<std::vector<double>> rows(M.rows());
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      rows[i].assign(M.row(i).begin(), M.row(i).end());
    }
    return rows;
  };
  j["U"] = to_rows(model.user_attitudes);
  j["T"] = to_rows(model.term_attitudes);
  j["objective_trace"] = model.objective_trace;
  j["converged"] = model.converged;
  j["iterations_run"] = model.iterations_run;
  j["clip_factor"] = model.clip_factor;
  j["config"] = {
      {"k", config.k},
      {"max_iterations", config.max_iterations},
      {"relative_tolerance", config.relative_tolerance},
      {"epsilon", config.epsilon},
      {"rng_seed", config.rng_seed},
      {"init",
       config.init == FactorInit::nndsvd ? "nndsvd" : "random_uniform"},
  };
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

FactorModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  FactorModel model;
  model.users = j.at("users").get<std::vector<std::string>>();
  model.terms = j.at("terms").get<std::vector<std::string>>();
  const auto& U = j.at("U");
  const auto& T = j.at("T");
  model.user_attitudes.resize(
      static_cast<Eigen::Index>(U.size()),
      U.empty() ? 0 : static_cast<Eigen::Index>(U[0].size()));
  for (std::size_t i = 0; i < U.size(); ++i) {
    for (std::size_t k = 0; k < U[i].size(); ++k) {
      model.user_attitudes(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(k) ) = U[i][k];
    }
  }
  model.term_attitudes.resize(
      static_cast<Eigen::Index>(T.size()),
      T.empty() ? 0 : static_cast<Eigen::Index>(T[0].size()));
  for (std::size_t i = 0; i < T.size(); ++i) {
    for (std::size_t k = 0; k < T[i].size(); ++k) {
      model.term_attitudes(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(k)) = T[i][k];
    }
  }
  model.objective_trace = j.value("objective_trace", std::vector<double>{});
  model.converged = j.value("converged", false);
  model.iterations_run = j.value("iterations_run", 0);
  model.clip_factor = j.value("clip_factor", 1.0);
  return model;
}

}  // namespace attsp
