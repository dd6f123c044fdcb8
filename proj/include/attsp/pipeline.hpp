#pragma once

#include <string>

#include "attsp/attitude.hpp"
#include "attsp/errors.hpp"
#include "attsp/factorizer.hpp"
#include "attsp/synthetic.hpp"

namespace attsp {

struct PipelineConfig {
  std::string corpus_path;
  std::string stopwords_path;
  std::string seed_lexicon_path;
  std::string category_lexicon_path;
  std::string output_dir = "out";
  int min_df = 2;
  double seed_threshold = 0.25;
  bool include_retweet_text = true;
  FactorizationConfig factorization;
  double lowess_fraction = 0.3;
  int lowess_robust_iterations = 2;
};

PipelineConfig load_pipeline_config(const std::string& path);

// Stage identifiers double as nonzero process exit codes.
enum class Stage : int {
  config = 10,
  ingest = 11,
  matrix = 12,
  seeding = 13,
  fit = 14,
  score = 15,
  liwc = 16,
  network = 17,
  trends = 18,
  report = 19,
};

struct StageFailure : Error {
  StageFailure(Stage stage, const std::string& what)
      : Error(what), stage(stage) {}
  Stage stage;
};

// End-to-end run; writes the full report bundle plus manifest.json into
// config.output_dir. Deterministic for a fixed rng_seed.
void run_pipeline(const PipelineConfig& config);

// CSV "t_iso,raw_y,smoothed_y,series" for the tendency or polarity series,
// timestamps jittered deterministically before smoothing.
void export_trend_csv(const std::vector<ScoredTweet>& scored,
                      bool use_polarity, double fraction,
                      int robust_iterations, const std::string& path);

}  // namespace attsp
