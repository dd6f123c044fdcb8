#include "attsp/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "attsp/errors.hpp"
#include "json.hpp"

namespace attsp {

PostKind post_kind_from_string(const std::string& s) {
  if (s == "original") return PostKind::original;
  if (s == "retweet") return PostKind::retweet;
  if (s == "reply") return PostKind::reply;
  if (s == "quote") return PostKind::quote;
  throw ParseError("unknown post kind: " + s);
}

std::string to_string(PostKind k) {
  switch (k) {
    case PostKind::original: return "original";
    case PostKind::retweet: return "retweet";
    case PostKind::reply: return "reply";
    case PostKind::quote: return "quote";
  }
  return "original";
}

namespace {

// Decodes one UTF-8 codepoint; malformed bytes decode as themselves.
std::uint32_t next_codepoint(const std::string& s, std::size_t& i) {
  const unsigned char c = s[i];
  if (c < 0x80) {
    ++i;
    return c;
  }
  int extra = 0;
  std::uint32_t cp = 0;
  if ((c & 0xE0) == 0xC0) {
    cp = c & 0x1F;
    extra = 1;
  } else if ((c & 0xF0) == 0xE0) {
    cp = c & 0x0F;
    extra = 2;
  } else if ((c & 0xF8) == 0xF0) {
    cp = c & 0x07;
    extra = 3;
  } else {
    ++i;
    return c;
  }
  if (i + extra >= s.size()) {
    ++i;
    return c;
  }
  for (int k = 1; k <= extra; ++k) {
    const unsigned char cc = s[i + k];
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return c;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += extra + 1;
  return cp;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Accent folding over the Latin-1 supplement and Latin Extended-A blocks,
// equivalent to NFD decomposition followed by combining-mark removal.
// Returns the replacement string, or nullptr when the codepoint passes
// through untouched.
const char* fold_latin(std::uint32_t cp) {
  switch (cp) {
    case 0xC6: case 0xE6: return "ae";
    case 0xD0: case 0xF0: case 0x110: case 0x111: return "d";
    case 0xD8: case 0xF8: return "o";
    case 0xDE: case 0xFE: return "th";
    case 0xDF: return "ss";
    case 0x126: case 0x127: return "h";
    case 0x131: return "i";
    case 0x138: return "k";
    case 0x141: case 0x142: return "l";
    case 0x152: case 0x153: return "oe";
    case 0x166: case 0x167: return "t";
    default: break;
  }
  struct Range {
    std::uint32_t lo, hi;
    const char* base;
  };
  static const Range kRanges[] = {
      {0xC0, 0xC5, "a"},   {0xC7, 0xC7, "c"},   {0xC8, 0xCB, "e"},
      {0xCC, 0xCF, "i"},   {0xD1, 0xD1, "n"},   {0xD2, 0xD6, "o"},
      {0xD9, 0xDC, "u"},   {0xDD, 0xDD, "y"},   {0xE0, 0xE5, "a"},
      {0xE7, 0xE7, "c"},   {0xE8, 0xEB, "e"},   {0xEC, 0xEF, "i"},
      {0xF1, 0xF1, "n"},   {0xF2, 0xF6, "o"},   {0xF9, 0xFC, "u"},
      {0xFD, 0xFD, "y"},   {0xFF, 0xFF, "y"},   {0x100, 0x105, "a"},
      {0x106, 0x10D, "c"}, {0x10E, 0x10F, "d"}, {0x112, 0x11B, "e"},
      {0x11C, 0x123, "g"}, {0x124, 0x125, "h"}, {0x128, 0x130, "i"},
      {0x132, 0x133, "ij"}, {0x134, 0x135, "j"}, {0x136, 0x137, "k"},
      {0x139, 0x140, "l"}, {0x143, 0x14B, "n"}, {0x14C, 0x151, "o"},
      {0x154, 0x159, "r"}, {0x15A, 0x161, "s"}, {0x162, 0x165, "t"},
      {0x168, 0x173, "u"}, {0x174, 0x175, "w"}, {0x176, 0x178, "y"},
      {0x179, 0x17E, "z"},
  };
  for (const auto& r : kRanges) {
    if (cp >= r.lo && cp <= r.hi) return r.base;
  }
  return nullptr;
}

bool is_word_char(std::uint32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9') || cp >= 0x80;
}

bool is_tag_char(std::uint32_t cp) { return is_word_char(cp) || cp == '_'; }

bool starts_with_ci(const std::string& s, std::size_t pos, const char* pfx) {
  for (std::size_t k = 0; pfx[k]; ++k) {
    if (pos + k >= s.size()) return false;
    if (std::tolower(static_cast<unsigned char>(s[pos + k])) != pfx[k])
      return false;
  }
  return true;
}

}  // namespace

std::string fold_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::uint32_t cp = next_codepoint(text, i);
    if (cp < 0x80) {
      out += static_cast<char>(std::tolower(static_cast<int>(cp)));
      continue;
    }
    if (cp >= 0x300 && cp <= 0x36F) continue;  // stray combining marks
    if (const char* rep = fold_latin(cp)) {
      out += rep;
      continue;
    }
    append_utf8(out, cp);
  }
  return out;
}

std::vector<Token> tokenize(const std::string& text,
                            const StopwordSet& stopwords) {
  std::vector<Token> tokens;
  std::istringstream chunks(text);
  std::string chunk;
  while (chunks >> chunk) {
    if (starts_with_ci(chunk, 0, "http://") ||
        starts_with_ci(chunk, 0, "https://") ||
        starts_with_ci(chunk, 0, "www.")) {
      std::string url = fold_text(chunk);
      while (!url.empty() &&
             std::string(".,;:!?)\"'").find(url.back()) != std::string::npos) {
        url.pop_back();
      }
      if (!url.empty()) tokens.push_back({url, TokenKind::url, false});
      continue;
    }
    const std::string folded = fold_text(chunk);
    std::size_t i = 0;
    while (i < folded.size()) {
      const char c = folded[i];
      if (c == '#' || c == '@') {
        std::size_t j = i + 1, k = j;
        std::string surf(1, c);
        while (k < folded.size()) {
          std::size_t k2 = k;
          std::uint32_t cp = next_codepoint(folded, k2);
          if (!is_tag_char(cp)) break;
          surf.append(folded, k, k2 - k);
          k = k2;
        }
        if (k > j) {
          tokens.push_back(
              {surf, c == '#' ? TokenKind::hashtag : TokenKind::mention,
               false});
          i = k;
          continue;
        }
        ++i;
        continue;
      }
      std::size_t k = i;
      std::string surf;
      while (k < folded.size()) {
        std::size_t k2 = k;
        std::uint32_t cp = next_codepoint(folded, k2);
        if (!is_word_char(cp)) break;
        surf.append(folded, k, k2 - k);
        k = k2;
      }
      if (k > i) {
        tokens.push_back({surf, TokenKind::word,
                          stopwords.count(surf) > 0});
        i = k;
      } else {
        ++i;
      }
    }
  }
  return tokens;
}

std::map<std::string, std::vector<Token>> build_user_documents(
    const std::vector<RawPost>& posts, const StopwordSet& stopwords,
    const BuildDocumentsOptions& opts) {
  std::vector<const RawPost*> ordered;
  ordered.reserve(posts.size());
  for (const auto& p : posts) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const RawPost* a, const RawPost* b) {
                     return a->timestamp < b->timestamp;
                   });
  std::map<std::string, std::vector<Token>> docs;
  for (const RawPost* p : ordered) {
    auto& doc = docs[p->author_id];  // key exists even for empty text
    if (p->kind == PostKind::retweet && !opts.include_retweet_text) continue;
    auto toks = tokenize(p->text, stopwords);
    doc.insert(doc.end(), toks.begin(), toks.end());
  }
  return docs;
}

std::vector<std::string> extract_terms(const std::vector<Token>& tokens) {
  std::vector<std::string> terms;
  std::vector<const Token*> words;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::word) {
      words.push_back(&t);
    } else {
      terms.push_back(t.surface);
    }
  }
  const std::size_t w = words.size();
  for (std::size_t i = 0; i < w; ++i) {
    if (!words[i]->is_stopword) terms.push_back(words[i]->surface);
    std::string gram = words[i]->surface;
    for (std::size_t n = 2; n <= 4 && i + n <= w; ++n) {
      gram += ' ';
      gram += words[i + n - 1]->surface;
      terms.push_back(gram);
    }
  }
  return terms;
}

TermCounts count_terms(const std::vector<Token>& tokens) {
  TermCounts counts;
  for (auto& term : extract_terms(tokens)) counts[term] += 1.0;
  return counts;
}

std::optional<int> DocumentTermMatrix::row_of(const std::string& user) const {
  auto it = std::find(rows.begin(), rows.end(), user);
  if (it == rows.end()) return std::nullopt;
  return static_cast<int>(it - rows.begin());
}

DocumentTermMatrix build_matrix(const std::map<std::string, TermCounts>& docs,
                                int min_df) {
  DocumentTermMatrix dtm;
  std::map<std::string, int> df;
  for (const auto& [user, counts] : docs) {
    dtm.rows.push_back(user);
    for (const auto& [term, c] : counts) {
      if (c > 0) df[term] += 1;
    }
  }
  for (const auto& [term, d] : df) {
    if (d >= min_df) {
      dtm.vocab.index[term] = static_cast<int>(dtm.vocab.terms.size());
      dtm.vocab.terms.push_back(term);
      dtm.vocab.document_frequency.push_back(d);
    }
  }
  if (dtm.vocab.terms.empty())
    throw AllDocumentsEmpty("vocabulary is empty after min_df filtering");

  const double n_docs = static_cast<double>(docs.size());
  std::vector<double> idf(dtm.vocab.terms.size());
  for (std::size_t j = 0; j < dtm.vocab.terms.size(); ++j) {
    idf[j] = std::log((1.0 + n_docs) /
                      (1.0 + dtm.vocab.document_frequency[j])) +
             1.0;
  }

  std::vector<Eigen::Triplet<double>> trips;
  int row = 0;
  for (const auto& [user, counts] : docs) {
    double norm2 = 0.0;
    std::vector<std::pair<int, double>> cells;
    for (const auto& [term, c] : counts) {
      auto col = dtm.vocab.lookup(term);
      if (!col) continue;
      const double v = c * idf[*col];
      cells.emplace_back(*col, v);
      norm2 += v * v;
    }
    const double scale = norm2 > 0 ? 1.0 / std::sqrt(norm2) : 0.0;
    for (auto& [col, v] : cells) trips.emplace_back(row, col, v * scale);
    ++row;
  }
  dtm.values.resize(static_cast<int>(dtm.rows.size()), dtm.vocab.size());
  dtm.values.setFromTriplets(trips.begin(), trips.end());
  return dtm;
}

void save_dtm_json(const DocumentTermMatrix& dtm, const std::string& path) {
  nlohmann::json j;
  j["rows"] = dtm.rows;
  j["terms"] = dtm.vocab.terms;
  j["document_frequency"] = dtm.vocab.document_frequency;
  std::vector<std::array<double, 3>> cells;
  for (int i = 0; i < dtm.values.outerSize(); ++i) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
             dtm.values, i);
         it; ++it) {
      cells.push_back({static_cast<double>(it.row()),
                       static_cast<double>(it.col()), it.value()});
    }
  }
  j["cells"] = cells;
  std::ofstream out(path);
  out << j.dump() << '\n';
}

DocumentTermMatrix load_dtm_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  DocumentTermMatrix dtm;
  dtm.rows = j.at("rows").get<std::vector<std::string>>();
  dtm.vocab.terms = j.at("terms").get<std::vector<std::string>>();
  dtm.vocab.document_frequency =
      j.at("document_frequency").get<std::vector<int>>();
  for (std::size_t i = 0; i < dtm.vocab.terms.size(); ++i) {
    dtm.vocab.index[dtm.vocab.terms[i]] = static_cast<int>(i);
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& cell : j.at("cells")) {
    trips.emplace_back(cell[0].get<int>(), cell[1].get<int>(),
                       cell[2].get<double>());
  }
  dtm.values.resize(static_cast<int>(dtm.rows.size()), dtm.vocab.size());
  dtm.values.setFromTriplets(trips.begin(), trips.end());
  return dtm;
}

std::vector<RawPost> load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file: " + path);
  std::vector<RawPost> posts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      RawPost p;
      p.id = j.at("id").get<std::string>();
      p.author_id = j.at("author_id").get<std::string>();
      p.timestamp = parse_iso8601(j.at("timestamp").get<std::string>());
      p.text = j.at("text").get<std::string>();
      p.kind = post_kind_from_string(j.value("kind", std::string("original")));
      if (j.contains("retweeted_author_id") &&
          !j["retweeted_author_id"].is_null()) {
        p.retweeted_author_id = j["retweeted_author_id"].get<std::string>();
      }
      if (p.kind == PostKind::retweet && !p.retweeted_author_id) {
        throw ParseError("retweet without retweeted_author_id");
      }
      if (j.contains("mentions")) {
        p.mentioned_author_ids =
            j["mentions"].get<std::vector<std::string>>();
      }
      posts.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("corpus line " + std::to_string(lineno) + ": " +
                       e.what());
    } catch (const ParseError& e) {
      throw ParseError("corpus line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return posts;
}

void save_corpus_jsonl(const std::vector<RawPost>& posts,
                       const std::string& path) {
  std::ofstream out(path);
  for (const auto& p : posts) {
    nlohmann::json j;
    j["id"] = p.id;
    j["author_id"] = p.author_id;
    j["timestamp"] = format_iso8601(p.timestamp);
    j["text"] = p.text;
    j["kind"] = to_string(p.kind);
    if (p.retweeted_author_id) j["retweeted_author_id"] = *p.retweeted_author_id;
    j["mentions"] = p.mentioned_author_ids;
    out << j.dump() << '\n';
  }
}

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stopword file: " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty()) set.insert(fold_text(line));
  }
  return set;
}

}  // namespace attsp
