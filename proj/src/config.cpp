#include "stance/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "stance/error.hpp"
#include "stance/utf8.hpp"

namespace stance {

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw Error("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(value), &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("config key '" + std::string(key) + "': cannot parse '" + std::string(value) + "'");
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw Error("config key '" + std::string(key) + "': expected a boolean");
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir) {
  const auto path = [&] {
    std::filesystem::path p{std::string(value)};
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  if (key == "base_lexicon") resources.base_lexicon = path();
  else if (key == "custom_lexicon") resources.custom_lexicon = path();
  else if (key == "terminology") resources.terminology = path();
  else if (key == "stopwords") resources.stopwords = path();
  else if (key == "ad_keywords") resources.ad_keywords = path();
  else if (key == "char_map") resources.char_map = path();
  else if (key == "tag_lexicon") resources.tag_lexicon = path();
  else if (key == "resource_dir") resources = ResourcePaths::defaults_in(path());
  else if (key == "K") num_features = parse_number<std::size_t>(key, value);
  else if (key == "C") C = parse_double(key, value);
  else if (key == "wi") wi = parse_double(key, value);
  else if (key == "gamma_min") gamma_min = parse_double(key, value);
  else if (key == "k_folds") k_folds = parse_number<std::size_t>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "leaky_selection") leaky_selection = parse_bool(key, value);
  else if (key == "tolerance") tolerance = parse_double(key, value);
  else if (key == "max_epochs") max_epochs = parse_number<std::size_t>(key, value);
  else throw Error("unknown config key '" + std::string(key) + "'");
}

void PipelineConfig::validate() const {
  if (num_features == 0) throw Error("K must be at least 1");
  if (k_folds < 2) throw Error("k_folds must be at least 2");
  if (!(gamma_min >= 0.5 && gamma_min <= 1.0)) throw Error("gamma_min must be in [0.5, 1]");
  try {
    train_config().validate();
  } catch (const std::invalid_argument& e) {
    throw Error(e.what());
  }
}

TrainConfig PipelineConfig::train_config() const {
  TrainConfig t;
  t.C = C;
  t.wi = wi;
  t.tolerance = tolerance;
  t.max_epochs = max_epochs;
  t.seed = seed;
  return t;
}

CvConfig PipelineConfig::cv_config() const {
  return CvConfig{num_features, train_config(), k_folds, leaky_selection};
}

void apply_config_text(PipelineConfig& cfg, std::string_view text, const std::filesystem::path& base_dir) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = utf8::trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    }
    cfg.set(utf8::trim(line.substr(0, eq)), utf8::trim(line.substr(eq + 1)), base_dir);
  }
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  PipelineConfig cfg;
  apply_config_text(cfg, buf.str(), path.parent_path());
  return cfg;
}

}  // namespace stance
