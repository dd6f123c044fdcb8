#pragma once

#include <Eigen/SparseCore>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "attsp/time_util.hpp"

namespace attsp {

enum class PostKind { original, retweet, reply, quote };

PostKind post_kind_from_string(const std::string& s);
std::string to_string(PostKind k);

struct RawPost {
  std::string id;
  std::string author_id;
  UnixTime timestamp = 0;
  std::string text;
  PostKind kind = PostKind::original;
  std::optional<std::string> retweeted_author_id;
  std::vector<std::string> mentioned_author_ids;
};

enum class TokenKind { word, hashtag, mention, url };

struct Token {
  std::string surface;  // lowercased, accent-folded
  TokenKind kind = TokenKind::word;
  bool is_stopword = false;

  bool operator==(const Token&) const = default;
};

using StopwordSet = std::unordered_set<std::string>;

// Lowercases, folds accents to ASCII base letters, keeps hashtags, mentions
// and URLs atomic, and drops remaining punctuation.
std::vector<Token> tokenize(const std::string& text,
                            const StopwordSet& stopwords);

// Lowercase + accent fold of a single string, same folding as tokenize.
std::string fold_text(const std::string& text);

struct BuildDocumentsOptions {
  bool include_retweet_text = true;
};

// One token stream per author, posts concatenated in chronological order.
std::map<std::string, std::vector<Token>> build_user_documents(
    const std::vector<RawPost>& posts, const StopwordSet& stopwords,
    const BuildDocumentsOptions& opts = {});

// Terms: hashtags/mentions/URLs verbatim, plus word n-grams for n in 1..4.
// Stopwords survive inside n-grams but are dropped as unigrams.
std::vector<std::string> extract_terms(const std::vector<Token>& tokens);

using TermCounts = std::unordered_map<std::string, double>;

TermCounts count_terms(const std::vector<Token>& tokens);

struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, int> index;
  std::vector<int> document_frequency;

  int size() const { return static_cast<int>(terms.size()); }
  std::optional<int> lookup(const std::string& term) const {
    auto it = index.find(term);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

struct DocumentTermMatrix {
  std::vector<std::string> rows;  // user ids, fixed order
  Vocabulary vocab;
  Eigen::SparseMatrix<double, Eigen::RowMajor> values;

  std::optional<int> row_of(const std::string& user) const;
};

// TF-IDF with idf = ln((1+N)/(1+df)) + 1, rows L2-normalized.
// Throws AllDocumentsEmpty when no term survives min_df.
DocumentTermMatrix build_matrix(
    const std::map<std::string, TermCounts>& docs, int min_df);

void save_dtm_json(const DocumentTermMatrix& dtm, const std::string& path);
DocumentTermMatrix load_dtm_json(const std::string& path);

// JSONL corpus loader; one RawPost per line. Throws ParseError with the
// offending line number.
std::vector<RawPost> load_corpus_jsonl(const std::string& path);
void save_corpus_jsonl(const std::vector<RawPost>& posts,
                       const std::string& path);

StopwordSet load_stopwords(const std::string& path);

}  // namespace attsp
