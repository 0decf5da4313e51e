#include "stance/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "stance/error.hpp"
#include "stance/random.hpp"
#include "stance/utf8.hpp"

namespace stance {

const SynthVocabulary& synth_vocabulary() {
  static const SynthVocabulary vocab{
      .shared = {"今天", "明天", "昨天", "朋友", "大家", "觉得", "知道", "时候", "问题", "医院",
                 "病人", "吃药", "感冒", "发烧", "咳嗽", "看病", "药方", "方子", "效果", "时间",
                 "孩子", "妈妈", "老人", "工作", "生活", "方法", "研究", "报道", "新闻", "网友",
                 "微博", "分享", "原因", "情况", "需要", "记得", "注意", "季节", "冬天", "夏天",
                 "睡眠", "饮食", "运动", "喝水", "疾病", "症状", "医学", "西医", "西药", "医疗",
                 "专家", "患者", "药物", "处方", "病情", "治病", "身边", "一起", "现在", "真的"},
      .supporting = {"中药", "养生", "国家", "科学", "中医药", "中国", "身体", "医生", "健康", "治疗",
                     "食疗", "调理", "保健", "传承", "疗效", "经典", "智慧", "食物", "药膳", "体质",
                     "祖国医学", "国粹", "康复", "预防", "免疫力", "食补", "调养", "瑰宝", "传统文化",
                     "养胃"},
      .opposing = {"中成药", "马兜铃酸", "注射", "注射液", "方舟子", "朱砂", "事件", "反对", "马兜铃",
                   "龙胆泻肝丸", "毒性", "肾衰竭", "副作用", "伪科学", "不良反应", "重金属", "肝损伤",
                   "骗子", "安慰剂", "双盲", "实验", "证据", "致癌", "有毒", "废除", "忽悠", "谣言",
                   "超标", "临床", "循证医学"},
      .terminology = {"中医", "针灸", "推拿", "艾灸", "中草药", "针刺", "针推", "中药材", "拔罐",
                      "刮痧", "经络", "穴位", "气血", "阴阳", "人参", "黄芪", "当归", "枸杞", "甘草",
                      "川芎", "茯苓", "党参", "阿胶", "板蓝根", "足三里", "合谷", "关元", "脉象",
                      "汤剂", "方剂", "膏方", "经方", "本草纲目", "黄帝内经", "伤寒论", "望闻问切",
                      "辨证论治", "六味地黄丸", "安宫牛黄丸", "三七", "冬虫夏草", "灵芝", "藿香正气水"},
      .support_tags = {"中医爱好", "爱中医", "中医师", "喜欢中医", "中医粉", "中医控", "中药师",
                       "针灸师", "中医养生爱好", "推拿师", "中医达人"},
      .oppose_tags = {"反中医", "中医黑", "反对中医"},
      .search_tags = {"中医", "中药", "针灸", "推拿", "艾灸", "中草药", "针刺", "针推", "中成药"},
      .ad_words = {"促销", "特价", "优惠", "包邮", "代购", "秒杀"},
      .fillers = {"哦", "啊", "吧", "呢", "的", "了", "哈哈"},
  };
  return vocab;
}

void SynthConfig::validate() const {
  const auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(name) + " must be in [0, 1]");
  };
  if (n_users_pos == 0 || n_users_neg == 0) throw std::invalid_argument("both user counts must be positive");
  if (tweets_min == 0 || tweets_max < tweets_min) throw std::invalid_argument("bad tweets per user range");
  if (vocab_shared == 0 || vocab_pos == 0 || vocab_neg == 0) throw std::invalid_argument("vocabulary sizes must be positive");
  if (!(signal_strength > 0.0 && signal_strength <= 1.0)) throw std::invalid_argument("signal_strength must be in (0, 1]");
  prob(tag_noise, "tag_noise");
  prob(label_noise, "label_noise");
  prob(off_topic_rate, "off_topic_rate");
  prob(ad_rate, "ad_rate");
  prob(retweet_rate, "retweet_rate");
  prob(traditional_rate, "traditional_rate");
  prob(duplicate_user_rate, "duplicate_user_rate");
  if (start_month < 1 || start_month > 12 || months == 0) throw std::invalid_argument("bad month range");
}

namespace {

struct User {
  std::string id;
  Stance stance;
};

class Generator {
 public:
  Generator(const SynthConfig& cfg, const CharMap& char_map) : cfg_(cfg), rng_(cfg.seed) {
    const auto& v = synth_vocabulary();
    shared_ = take(v.shared, cfg.vocab_shared);
    pos_ = take(v.supporting, cfg.vocab_pos);
    neg_ = take(v.opposing, cfg.vocab_neg);
    // Prefer the smallest traditional code point when several map to one
    // simplified character.
    for (const auto& [trad, simp] : char_map.pairs()) {
      auto [it, fresh] = to_traditional_.try_emplace(simp, trad);
      if (!fresh) it->second = std::min(it->second, trad);
    }
    using namespace std::chrono;
    const year_month start{year{cfg.start_year}, month{cfg.start_month}};
    const year_month end = start + std::chrono::months{cfg.months};
    begin_ = sys_days{start / 1};
    span_seconds_ = static_cast<std::uint64_t>((sys_days{end / 1} - begin_).count()) * 86400;
  }

  SynthCorpus run() {
    SynthCorpus corpus;
    std::vector<User> users;
    char buf[32];
    const std::size_t n = cfg_.n_users_pos + cfg_.n_users_neg;
    std::vector<Stance> stances(cfg_.n_users_pos, Stance::Supporting);
    stances.insert(stances.end(), cfg_.n_users_neg, Stance::Opposing);
    shuffle(std::span(stances), rng_);
    for (std::size_t i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "u%05zu", i + 1);
      users.push_back(User{buf, stances[i]});
      corpus.user_stance.emplace(buf, stances[i]);
    }

    for (const auto& user : users) emit_profile(user, corpus);

    std::size_t tweet_no = 0;
    std::size_t nested_no = 0;
    for (const auto& user : users) {
      const std::size_t count = cfg_.tweets_min + uniform_index(rng_, cfg_.tweets_max - cfg_.tweets_min + 1);
      for (std::size_t t = 0; t < count; ++t) {
        RawTweet root = make_tweet(user, "t" + std::to_string(++tweet_no));
        std::vector<Stance> chain{user.stance};
        if (bernoulli(rng_, cfg_.retweet_rate)) {
          const std::size_t depth = bernoulli(rng_, 0.3) ? 2 : 1;
          std::shared_ptr<const RawTweet> tail;
          std::vector<Stance> nested;
          // Build from the deepest post outwards so timestamps decrease.
          Timestamp when = root.created_at;
          std::vector<RawTweet> posts;
          for (std::size_t d = 0; d < depth; ++d) {
            const User& author = users[uniform_index(rng_, users.size())];
            RawTweet post = make_tweet(author, "r" + std::to_string(++nested_no));
            when -= std::chrono::seconds{1 + uniform_index(rng_, 7 * 86400)};
            post.created_at = std::max(when, Timestamp{begin_});
            posts.push_back(std::move(post));
            nested.push_back(author.stance);
          }
          for (std::size_t d = posts.size(); d-- > 0;) {
            posts[d].retweet = tail;
            tail = std::make_shared<const RawTweet>(std::move(posts[d]));
          }
          root.retweet = tail;
          chain.insert(chain.end(), nested.begin(), nested.end());
        }
        for (std::size_t k = 0; k < chain.size(); ++k) {
          corpus.gold.emplace_back(root.id + "#" + std::to_string(k), chain[k]);
        }
        corpus.tweets.push_back(std::move(root));
      }
    }
    return corpus;
  }

 private:
  static std::vector<std::string> take(const std::vector<std::string>& pool, std::size_t n) {
    return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(std::min(n, pool.size()))};
  }

  const std::string& pick(const std::vector<std::string>& pool) {
    return pool[uniform_index(rng_, pool.size())];
  }

  // `n` distinct entries.
  std::vector<std::string> pick_distinct(const std::vector<std::string>& pool, std::size_t n) {
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    shuffle(std::span(idx), rng_);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < std::min(n, idx.size()); ++i) out.push_back(pool[idx[i]]);
    return out;
  }

  void emit_profile(const User& user, SynthCorpus& corpus) {
    const auto& v = synth_vocabulary();
    UserProfile profile{user.id, {}};
    if (!bernoulli(rng_, cfg_.tag_noise)) {
      const auto& tags = user.stance == Stance::Supporting ? v.support_tags : v.oppose_tags;
      for (const auto& t : pick_distinct(tags, 1 + uniform_index(rng_, 2))) profile.tags.push_back(t);
      for (const auto& t : pick_distinct(v.search_tags, uniform_index(rng_, 3))) profile.tags.push_back(t);
    }
    corpus.users.push_back(profile);
    if (!profile.tags.empty() && bernoulli(rng_, cfg_.duplicate_user_rate)) {
      corpus.users.push_back(UserProfile{user.id, {pick(v.search_tags)}});
    }
  }

  RawTweet make_tweet(const User& author, std::string id) {
    const auto& v = synth_vocabulary();
    std::vector<std::string> words;
    if (bernoulli(rng_, cfg_.off_topic_rate)) {
      if (bernoulli(rng_, 0.5)) words.push_back(pick(v.terminology));
      for (const auto& w : pick_distinct(shared_, 3 + uniform_index(rng_, 4))) words.push_back(w);
    } else {
      for (const auto& w : pick_distinct(v.terminology, 2 + uniform_index(rng_, 2))) words.push_back(w);
      for (const auto& w : pick_distinct(shared_, 2 + uniform_index(rng_, 4))) words.push_back(w);
      if (bernoulli(rng_, cfg_.signal_strength)) {
        Stance voice = author.stance;
        if (bernoulli(rng_, cfg_.label_noise)) voice = opposite(voice);
        const auto& pool = voice == Stance::Supporting ? pos_ : neg_;
        for (const auto& w : pick_distinct(pool, 1 + uniform_index(rng_, 3))) words.push_back(w);
      }
    }
    if (bernoulli(rng_, cfg_.ad_rate)) words.push_back(pick(v.ad_words));
    if (bernoulli(rng_, 0.15)) words.push_back(pick(v.fillers));
    shuffle(std::span(words), rng_);

    std::string text;
    if (bernoulli(rng_, 0.3)) text += "@user" + std::to_string(uniform_index(rng_, 10000)) + " ";
    static const char* const kSeparators[] = {" ", " ", " ", "，", "。", "！"};
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i > 0) text += kSeparators[uniform_index(rng_, std::size(kSeparators))];
      text += words[i];
    }
    if (bernoulli(rng_, 0.1)) text += "[哈哈]";
    if (bernoulli(rng_, 0.2)) text += " http://t.cn/" + std::to_string(uniform_index(rng_, 1000000));
    if (!to_traditional_.empty() && bernoulli(rng_, cfg_.traditional_rate)) text = traditional(text);

    RawTweet tweet;
    tweet.id = std::move(id);
    tweet.user_id = author.id;
    tweet.text = std::move(text);
    tweet.created_at = Timestamp{begin_} + std::chrono::seconds{uniform_index(rng_, span_seconds_)};
    return tweet;
  }

  std::string traditional(std::string_view text) const {
    std::string out;
    for (auto ch : utf8::split_chars(text)) {
      const auto it = to_traditional_.find(utf8::decode(ch));
      if (it == to_traditional_.end()) {
        out.append(ch);
      } else {
        out += utf8::encode(it->second);
      }
    }
    return out;
  }

  const SynthConfig& cfg_;
  Rng rng_;
  std::vector<std::string> shared_;
  std::vector<std::string> pos_;
  std::vector<std::string> neg_;
  std::map<char32_t, char32_t> to_traditional_;
  std::chrono::sys_days begin_{};
  std::uint64_t span_seconds_ = 0;
};

}  // namespace

SynthCorpus generate(const SynthConfig& cfg, const CharMap& char_map) {
  cfg.validate();
  return Generator(cfg, char_map).run();
}

std::string gold_tsv(const SynthCorpus& corpus) {
  std::string out;
  for (const auto& [id, s] : corpus.gold) {
    out += id;
    out += '\t';
    out += to_string(s);
    out += '\n';
  }
  return out;
}

void write_synth(const std::filesystem::path& dir, const SynthCorpus& corpus) {
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << body;
  };
  std::string tweets;
  for (const auto& t : corpus.tweets) tweets += to_json_line(t) + "\n";
  std::string users;
  for (const auto& u : corpus.users) users += to_json_line(u) + "\n";
  write("tweets.jsonl", tweets);
  write("users.jsonl", users);
  write("gold.tsv", gold_tsv(corpus));
}

}  // namespace stance
