#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attsp/attitude.hpp"
#include "attsp/corpus.hpp"

namespace attsp {

struct CategoryLexicon {
  std::map<int, std::string> categories;           // id -> name
  std::map<int, std::optional<int>> parent;        // id -> parent id
  struct Entry {
    std::string pattern;  // literal word, or prefix ending in '*'
    std::vector<int> category_ids;
  };
  std::vector<Entry> entries;

  // Category ids the word belongs to, ancestors included.
  std::vector<int> match_word(const std::string& word) const;
  bool word_in_category(const std::string& word, int category_id) const;
  std::optional<int> id_of(const std::string& name) const;

  // Built on load: entry categories expanded with their ancestors.
  std::vector<std::vector<int>> closed_entry_categories;
};

// LIWC-dic compatible: a %-delimited header of "id<TAB>name[<TAB>parent_id]"
// lines, then "pattern<TAB>id[<TAB>id...]" entry lines.
CategoryLexicon load_lexicon(const std::string& path);

// Fraction of word tokens matching the category or any descendant; 0 for
// token streams without words.
double tweet_category_fraction(const std::vector<Token>& tokens,
                               int category_id, const CategoryLexicon& lex);

// (group mean fraction - population mean) / population stddev; nullopt when
// the population stddev is zero.
std::optional<double> zscore(const std::vector<double>& group_fractions,
                             const std::vector<double>& all_fractions);

struct CategoryAssociation {
  int category_id = 0;
  std::string category_name;
  AttitudeGroup group = AttitudeGroup::empathy;
  std::string month;
  double z = 0.0;
  int n_tweets = 0;
};

// One association per (category, month, group) with at least one tweet;
// population = that month's tweets across both groups.
std::vector<CategoryAssociation> monthly_group_zscores(
    const std::vector<ScoredTweet>& scored,
    const std::vector<RawPost>& posts, const CategoryLexicon& lex,
    const StopwordSet& stopwords);

void save_associations_csv(const std::vector<CategoryAssociation>& rows,
                           const std::string& path);

}  // namespace attsp
