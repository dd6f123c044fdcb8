// Command-line front end for the attitude spectrum pipeline.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "attsp/attitude.hpp"
#include "attsp/io_util.hpp"
#include "attsp/lexicon.hpp"
#include "attsp/network.hpp"
#include "attsp/pipeline.hpp"
#include "attsp/trends.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace attsp;

namespace {

void apply_env_overrides(PipelineConfig& config) {
  if (const char* dir = std::getenv("ATTSP_OUTPUT_DIR")) {
    config.output_dir = dir;
  }
  if (const char* seed = std::getenv("ATTSP_SEED")) {
    config.factorization.rng_seed = std::strtoull(seed, nullptr, 10);
  }
}

StopwordSet stopwords_or_empty(const std::string& path) {
  return path.empty() ? StopwordSet{} : load_stopwords(path);
}

DocumentTermMatrix matrix_from_corpus(const std::string& corpus_path,
                                      const std::string& stopwords_path,
                                      int min_df, bool include_retweets) {
  auto posts = load_corpus_jsonl(corpus_path);
  auto docs = build_user_documents(posts, stopwords_or_empty(stopwords_path),
                                   {include_retweets});
  std::map<std::string, TermCounts> counts;
  for (const auto& [user, tokens] : docs) counts[user] = count_terms(tokens);
  return build_matrix(counts, min_df);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attitude spectrum pipeline: semi-supervised factorization of "
               "social posts into an empathy/threat spectrum with lexical, "
               "network, and trend reports"};
  app.require_subcommand(1);

  PipelineConfig config;
  SyntheticSpec synth_spec;
  std::string config_path, corpus_path, stopwords_path, model_path;
  std::string scored_path, labels_path, out_path;

  auto add_factor_flags = [&](CLI::App* cmd) {
    cmd->add_option("--max-iterations", config.factorization.max_iterations);
    cmd->add_option("--tolerance", config.factorization.relative_tolerance);
    cmd->add_option("--rng-seed", config.factorization.rng_seed);
    cmd->add_option("--init", [&](const std::vector<std::string>& v) {
      config.factorization.init = v[0] == "nndsvd" ? FactorInit::nndsvd
                                                   : FactorInit::random_uniform;
      return true;
    }, "random_uniform|nndsvd");
  };

  auto* ingest = app.add_subcommand(
      "ingest", "Build the TF-IDF document-term matrix from a JSONL corpus");
  ingest->add_option("--corpus", corpus_path)->required();
  ingest->add_option("--stopwords", stopwords_path);
  ingest->add_option("--min-df", config.min_df);
  ingest->add_flag("!--no-retweet-text", config.include_retweet_text,
                   "Exclude retweet text from the retweeter's document");
  ingest->add_option("--out", out_path)->required();

  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit the topic-supervised factorization from a matrix artifact");
  fit_cmd->add_option("--matrix", corpus_path)->required();
  fit_cmd->add_option("--seeds", config.seed_lexicon_path)->required();
  fit_cmd->add_option("--threshold", config.seed_threshold);
  fit_cmd->add_option("--out", out_path)->required();
  add_factor_flags(fit_cmd);

  auto* score = app.add_subcommand(
      "score", "Score per-tweet tendency and polarity with a fitted model");
  score->add_option("--corpus", corpus_path)->required();
  score->add_option("--model", model_path)->required();
  score->add_option("--stopwords", stopwords_path);
  score->add_option("--out", out_path)->required();

  auto* liwc = app.add_subcommand(
      "liwc", "Monthly per-group category z-scores from scored tweets");
  liwc->add_option("--scored", scored_path)->required();
  liwc->add_option("--corpus", corpus_path)->required();
  liwc->add_option("--lexicon", config.category_lexicon_path)->required();
  liwc->add_option("--stopwords", stopwords_path);
  liwc->add_option("--out", out_path)->required();

  auto* network = app.add_subcommand(
      "network", "Interaction graphs, largest SCC, assortativity");
  network->add_option("--corpus", corpus_path)->required();
  network->add_option("--model", model_path)->required();
  network->add_option("--out-dir", out_path)->required();

  auto* trends = app.add_subcommand(
      "trends", "Weekly volume and LOWESS tendency/polarity trends");
  trends->add_option("--corpus", corpus_path)->required();
  trends->add_option("--scored", scored_path)->required();
  trends->add_option("--fraction", config.lowess_fraction);
  trends->add_option("--robust-iterations", config.lowess_robust_iterations);
  trends->add_option("--out-dir", out_path)->required();

  auto* run = app.add_subcommand("run", "End-to-end pipeline run");
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--corpus", config.corpus_path);
  run->add_option("--stopwords", config.stopwords_path);
  run->add_option("--seeds", config.seed_lexicon_path);
  run->add_option("--lexicon", config.category_lexicon_path);
  run->add_option("--output-dir", config.output_dir);
  run->add_option("--min-df", config.min_df);
  run->add_option("--threshold", config.seed_threshold);
  run->add_option("--lowess-fraction", config.lowess_fraction);
  run->add_option("--lowess-robust-iterations",
                  config.lowess_robust_iterations);
  add_factor_flags(run);

  auto* synth = app.add_subcommand(
      "synth", "Generate a labeled synthetic corpus for testing");
  synth->add_option("--users-per-attitude", synth_spec.users_per_attitude);
  synth->add_option("--posts-per-user", synth_spec.posts_per_user);
  synth->add_option("--seed-user-fraction", synth_spec.seed_user_fraction);
  synth->add_option("--noise-rate", synth_spec.noise_rate);
  synth->add_option("--intra-group-preference",
                    synth_spec.intra_group_preference);
  synth->add_option("--months", synth_spec.months);
  synth->add_option("--rng-seed", synth_spec.rng_seed);
  synth->add_option("--corpus-out", corpus_path)->required();
  synth->add_option("--labels-out", labels_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      auto dtm = matrix_from_corpus(corpus_path, stopwords_path, config.min_df,
                                    config.include_retweet_text);
      save_dtm_json(dtm, out_path);
      std::cout << "matrix: " << dtm.rows.size() << " users x "
                << dtm.vocab.size() << " terms\n";
    } else if (*fit_cmd) {
      auto dtm = load_dtm_json(corpus_path);
      auto seeds = load_seed_lexicon(config.seed_lexicon_path);
      auto scores = score_all_seeds(dtm, seeds);
      auto sup = build_supervision(dtm.rows, scores, config.seed_threshold);
      auto model = fit(dtm, sup, config.factorization);
      save_model_json(model, config.factorization, out_path);
      std::cout << "fit: " << model.iterations_run << " iterations, objective "
                << (model.objective_trace.empty()
                        ? 0.0
                        : model.objective_trace.back())
                << (model.converged ? " (converged)" : "") << '\n';
    } else if (*score) {
      auto posts = load_corpus_jsonl(corpus_path);
      auto model = load_model_json(model_path);
      auto scored =
          score_tweets(posts, model, stopwords_or_empty(stopwords_path));
      save_scored_csv(scored, out_path);
      std::cout << "scored " << scored.size() << " tweets\n";
    } else if (*liwc) {
      auto posts = load_corpus_jsonl(corpus_path);
      auto scored = load_scored_csv(scored_path);
      auto lex = load_lexicon(config.category_lexicon_path);
      auto assoc = monthly_group_zscores(scored, posts, lex,
                                         stopwords_or_empty(stopwords_path));
      save_associations_csv(assoc, out_path);
      std::cout << assoc.size() << " category associations\n";
    } else if (*network) {
      auto posts = load_corpus_jsonl(corpus_path);
      auto model = load_model_json(model_path);
      fs::create_directories(out_path);
      nlohmann::json metrics;
      for (auto kind : {GraphKind::mention, GraphKind::retweet}) {
        auto g = kind == GraphKind::mention ? build_mention_graph(posts)
                                            : build_retweet_graph(posts);
        attach_attitudes(g, model);
        const char* name = kind == GraphKind::mention ? "mention" : "retweet";
        if (g.nodes.empty()) {
          metrics[name] = {{"nodes", 0}, {"edges", 0}};
          continue;
        }
        auto scc = largest_scc(g);
        metrics[name]["nodes"] = g.nodes.size();
        metrics[name]["edges"] = g.edges.size();
        metrics[name]["scc_nodes"] = scc.nodes.size();
        metrics[name]["scc_edges"] = scc.edges.size();
        save_edge_list_csv(
            scc, (fs::path(out_path) / (std::string(name) + "_edges.csv"))
                     .string());
      }
      std::ofstream m(fs::path(out_path) / "network_metrics.json");
      m << metrics.dump(2) << '\n';
      std::cout << "network metrics written to " << out_path << '\n';
    } else if (*trends) {
      auto posts = load_corpus_jsonl(corpus_path);
      auto scored = load_scored_csv(scored_path);
      fs::create_directories(out_path);
      auto weeks = weekly_volume(posts);
      std::vector<std::vector<std::string>> rows;
      rows.push_back({"week_start", "count"});
      for (const auto& w : weeks) {
        rows.push_back(
            {format_iso_date(w.week_start), std::to_string(w.count)});
      }
      write_csv(rows, (fs::path(out_path) / "weekly_volume.csv").string());
      export_trend_csv(scored, false, config.lowess_fraction,
                       config.lowess_robust_iterations,
                       (fs::path(out_path) / "tendency_trend.csv").string());
      export_trend_csv(scored, true, config.lowess_fraction,
                       config.lowess_robust_iterations,
                       (fs::path(out_path) / "polarity_trend.csv").string());
      std::cout << weeks.size() << " weeks\n";
    } else if (*run) {
      if (!config_path.empty()) {
        PipelineConfig from_file = load_pipeline_config(config_path);
        // explicit CLI flags win over the file
        if (config.corpus_path.empty())
          config.corpus_path = from_file.corpus_path;
        if (config.stopwords_path.empty())
          config.stopwords_path = from_file.stopwords_path;
        if (config.seed_lexicon_path.empty())
          config.seed_lexicon_path = from_file.seed_lexicon_path;
        if (config.category_lexicon_path.empty())
          config.category_lexicon_path = from_file.category_lexicon_path;
        if (run->count("--output-dir") == 0)
          config.output_dir = from_file.output_dir;
        if (run->count("--min-df") == 0) config.min_df = from_file.min_df;
        if (run->count("--threshold") == 0)
          config.seed_threshold = from_file.seed_threshold;
        if (run->count("--lowess-fraction") == 0)
          config.lowess_fraction = from_file.lowess_fraction;
        if (run->count("--lowess-robust-iterations") == 0)
          config.lowess_robust_iterations =
              from_file.lowess_robust_iterations;
        if (run->count("--max-iterations") == 0 &&
            run->count("--tolerance") == 0 && run->count("--rng-seed") == 0 &&
            run->count("--init") == 0) {
          config.factorization = from_file.factorization;
        }
      }
      apply_env_overrides(config);
      run_pipeline(config);
      std::cout << "report bundle written to " << config.output_dir << '\n';
    } else if (*synth) {
      auto corpus = generate_synthetic(synth_spec);
      save_corpus_jsonl(corpus.posts, corpus_path);
      save_labels_csv(corpus.labels, labels_path);
      std::cout << corpus.posts.size() << " posts, " << corpus.labels.size()
                << " users\n";
    }
  } catch (const StageFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.stage);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
