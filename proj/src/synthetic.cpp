#include "attsp/synthetic.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "attsp/errors.hpp"
#include "attsp/io_util.hpp"

namespace attsp {

const char* kEmpathySeedHashtag = "#todossomosmigrantes";
const char* kThreatSeedHashtag = "#nomasinmigrantes";

namespace {

// Category-bearing word pools; surfaces match the bundled fixture lexicon.
const std::vector<std::string> kSocialWords = {
    "amigos", "familia", "hermano", "comunidad",
    "juntos", "vecinos", "gente",  "madre"};
const std::vector<std::string> kMoneyWords = {
    "dinero", "plata", "sueldo", "impuestos", "costo", "gasto", "economia"};

std::string pick(const std::vector<std::string>& pool, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  if (spec.users_per_attitude < 1 || spec.posts_per_user < 1 ||
      spec.planted_vocab_size < 1 || spec.noise_vocab_size < 1 ||
      spec.months < 1) {
    throw Error("synthetic spec counts must be >= 1");
  }
  if (spec.noise_rate < 0 || spec.noise_rate > 1 ||
      spec.seed_user_fraction < 0 || spec.seed_user_fraction > 1 ||
      spec.intra_group_preference < 0 || spec.intra_group_preference > 1) {
    throw Error("synthetic spec probabilities must be in [0, 1]");
  }

  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto word_list = [](const char* stem, int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s%02d", stem, i);
      v.emplace_back(buf);
    }
    return v;
  };
  const auto emp_vocab = word_list("acoger", spec.planted_vocab_size);
  const auto thr_vocab = word_list("frontera", spec.planted_vocab_size);
  const auto noise_vocab = word_list("comun", spec.noise_vocab_size);

  const int n_users = 2 * spec.users_per_attitude;
  std::vector<std::string> users(n_users);
  SyntheticCorpus out;
  for (int u = 0; u < n_users; ++u) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "u%04d", u);
    users[u] = buf;
    out.labels[buf] = u < spec.users_per_attitude ? "empathy" : "threat";
  }

  // per-month timestamps over 2017, deterministic
  auto random_time = [&](std::mt19937_64& r) {
    std::uniform_int_distribution<int> month(0, spec.months - 1);
    std::uniform_int_distribution<int> day(1, 28);
    std::uniform_int_distribution<int> sec(0, 86399);
    const int m = month(r);
    return days_from_civil(2017, 1 + m, day(r)) * 86400 +
           static_cast<UnixTime>(sec(r));
  };

  int post_counter = 0;
  auto next_id = [&post_counter]() {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%06d", post_counter++);
    return std::string(buf);
  };

  auto gen_words = [&](bool empathy, int count) {
    std::string text;
    for (int w = 0; w < count; ++w) {
      std::string word;
      if (unit(rng) < spec.noise_rate) {
        // shared words, with a slice of the other side's category pool so
        // the category frequency contrast stays planted, not absolute
        word = unit(rng) < 0.25
                   ? pick(empathy ? kMoneyWords : kSocialWords, rng)
                   : pick(noise_vocab, rng);
      } else if (unit(rng) < 0.15) {
        word = pick(empathy ? kSocialWords : kMoneyWords, rng);
      } else {
        word = pick(empathy ? emp_vocab : thr_vocab, rng);
      }
      if (!text.empty()) text += ' ';
      text += word;
    }
    return text;
  };

  auto pick_target = [&](int u, bool same_group) {
    const bool emp = u < spec.users_per_attitude;
    const int base = (emp == same_group) ? 0 : spec.users_per_attitude;
    std::uniform_int_distribution<int> d(0, spec.users_per_attitude - 1);
    int t;
    do {
      t = base + d(rng);
    } while (t == u);
    return t;
  };

  for (int u = 0; u < n_users; ++u) {
    const bool emp = u < spec.users_per_attitude;
    const bool seed_user = unit(rng) < spec.seed_user_fraction;
    for (int p = 0; p < spec.posts_per_user; ++p) {
      RawPost post;
      post.id = next_id();
      post.author_id = users[u];
      post.timestamp = random_time(rng);
      post.kind = PostKind::original;
      post.text = gen_words(emp, 8);
      if (seed_user) {
        post.text += ' ';
        post.text += emp ? kEmpathySeedHashtag : kThreatSeedHashtag;
      }
      out.posts.push_back(std::move(post));
    }
    for (int r = 0; r < spec.retweets_per_user; ++r) {
      const bool same = unit(rng) < spec.intra_group_preference;
      const int t = pick_target(u, same);
      RawPost post;
      post.id = next_id();
      post.author_id = users[u];
      post.timestamp = random_time(rng);
      post.kind = PostKind::retweet;
      post.retweeted_author_id = users[t];
      post.text = gen_words(t < spec.users_per_attitude, 8);
      out.posts.push_back(std::move(post));
    }
    for (int m = 0; m < spec.mentions_per_user; ++m) {
      const bool same = unit(rng) < spec.intra_group_preference;
      const int t = pick_target(u, same);
      RawPost post;
      post.id = next_id();
      post.author_id = users[u];
      post.timestamp = random_time(rng);
      post.kind = PostKind::reply;
      post.mentioned_author_ids.push_back(users[t]);
      post.text = "@" + users[t] + ' ' + gen_words(emp, 6);
      out.posts.push_back(std::move(post));
    }
  }
  return out;
}

void save_labels_csv(const std::map<std::string, std::string>& labels,
                     const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"author_id", "attitude"});
  for (const auto& [user, label] : labels) rows.push_back({user, label});
  write_csv(rows, path);
}

std::map<std::string, std::string> load_labels_csv(const std::string& path) {
  auto rows = read_csv(path);
  std::map<std::string, std::string> labels;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() >= 2) labels[rows[i][0]] = rows[i][1];
  }
  return labels;
}

}  // namespace attsp
