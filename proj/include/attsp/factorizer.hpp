#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "attsp/corpus.hpp"
#include "attsp/seeding.hpp"

namespace attsp {

enum class FactorInit { random_uniform, nndsvd };

struct FactorizationConfig {
  int k = 2;
  int max_iterations = 500;
  double relative_tolerance = 1e-5;
  double epsilon = 1e-12;
  std::uint64_t rng_seed = 42;
  FactorInit init = FactorInit::random_uniform;
};

struct FactorModel {
  std::vector<std::string> users;
  std::vector<std::string> terms;
  Eigen::MatrixXd user_attitudes;  // U, users x k
  Eigen::MatrixXd term_attitudes;  // T, k x terms
  std::vector<double> objective_trace;
  bool converged = false;
  int iterations_run = 0;
  double clip_factor = 1.0;  // global scale applied when clipping U to [0,1]
};

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Frobenius objective ||V - (U o L) T||_F^2.
double objective(const SparseRowMatrix& V, const Eigen::MatrixXd& U,
                 const Eigen::MatrixXd& T, const Eigen::MatrixXd& L);

// Seeded initialization shared by fit and by plain-NMF comparisons.
void init_factors(const SparseRowMatrix& V, const FactorizationConfig& config,
                  Eigen::MatrixXd& W, Eigen::MatrixXd& H);

// Topic-supervised NMF via masked multiplicative updates; the mask L gates
// both the reconstruction and the W update, so L=0 entries stay exactly 0.
FactorModel fit(const DocumentTermMatrix& dtm, const SupervisionMatrix& sup,
                const FactorizationConfig& config);

// L1-normalizes each row of T, absorbs the scale into U's columns, then
// divides U globally by max(1, max(U)) so entries read as probabilities.
FactorModel normalize_model(FactorModel model);

void save_model_json(const FactorModel& model,
                     const FactorizationConfig& config,
                     const std::string& path);
FactorModel load_model_json(const std::string& path);

}  // namespace attsp
