#include "boostlex/cli/commands.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "boostlex/cli/config.h"
#include "boostlex/common.h"
#include "boostlex/corpus.h"
#include "boostlex/eval/harness.h"
#include "boostlex/eval/pipeline.h"
#include "boostlex/explain/report.h"
#include "boostlex/explain/shap.h"
#include "boostlex/parallel.h"

namespace boostlex::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kTrainKeys = {"rounds", "eta", "max_depth", "min_child_weight", "lambda", "gamma",
                                             "class_weights"};
const std::vector<std::string> kFeatureKeys = {"stage",        "ngram_lo",     "ngram_hi",         "max_features",
                                               "min_df",       "pos_ngram_lo", "pos_ngram_hi",     "pos_max_features",
                                               "pos_min_df",   "lexicon",      "tagger_corpus",    "tagger_model",
                                               "tagger_epochs"};

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

std::vector<std::string> join(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> c = {
      {"train", "fit featurizer and ensemble, save the model, report on a held-out split",
       join({{"corpus", "format", "seed", "test_fraction", "downsample", "model_out", "tagger_out", "output", "json"},
             kTrainKeys, kFeatureKeys})},
      {"predict", "label documents as JSON lines", {"model", "input", "format", "output"}},
      {"explain", "per-document SHAP force reports",
       {"model", "input", "format", "output", "explain_class", "explain_format", "top"}},
      {"evaluate", "score a saved model on a labeled corpus", {"model", "corpus", "format", "output", "json"}},
      {"cv", "k-fold cross-validation, optionally over a hyperparameter grid",
       join({{"corpus", "format", "seed", "k", "downsample", "output", "json", "grid_eta", "grid_max_depth",
              "grid_rounds"},
             kTrainKeys, kFeatureKeys})},
      {"ablate", "feature-set ablation table on one stratified split",
       join({{"corpus", "format", "seed", "test_fraction", "downsample", "stages", "output", "json"}, kTrainKeys,
             kFeatureKeys})},
      {"downsample", "down-sample every class to the minority count", {"corpus", "format", "seed", "output"}},
      {"featurize", "dump sparse feature vectors plus a registry sidecar",
       join({{"corpus", "input", "format", "seed", "model", "output"}, kFeatureKeys})},
      {"terms", "most frequent words per class", {"corpus", "format", "top", "output", "json"}},
  };
  return c;
}

bool is_bool_key(const std::string& key) { return key == "downsample" || key == "json"; }

std::string dashed(std::string key) {
  for (auto& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("failed writing " + path.string());
}

class Runner {
 public:
  Runner(std::string command, RunConfig config, std::ostream& out)
      : command_(std::move(command)), cfg_(std::move(config)), out_(out) {}

  void validate() {
    validate_ranges(cfg_);
    if (command_ == "train") {
      require("corpus");
      require("model_out");
      require_resources();
    } else if (command_ == "predict" || command_ == "explain") {
      require("model");
      require("input");
    } else if (command_ == "evaluate") {
      require("model");
      require("corpus");
    } else if (command_ == "cv" || command_ == "ablate") {
      require("corpus");
      require_resources();
      if (command_ == "ablate" && cfg_.test_fraction <= 0) throw UsageError("ablate needs test_fraction > 0");
    } else if (command_ == "downsample") {
      require("corpus");
      require("output");
    } else if (command_ == "featurize") {
      if (cfg_.corpus.empty() && cfg_.input.empty()) throw UsageError("featurize needs 'corpus' or 'input'");
      check_exists("corpus", cfg_.corpus);
      check_exists("input", cfg_.input);
      require("output");
      if (cfg_.model.empty()) require_resources();
      check_exists("model", cfg_.model);
    } else if (command_ == "terms") {
      require("corpus");
    }
  }

  void execute() {
    if (command_ == "train") return train();
    if (command_ == "predict") return predict();
    if (command_ == "explain") return explain();
    if (command_ == "evaluate") return evaluate();
    if (command_ == "cv") return cv();
    if (command_ == "ablate") return ablate();
    if (command_ == "downsample") return downsample();
    if (command_ == "featurize") return featurize();
    if (command_ == "terms") return terms();
  }

 private:
  const std::string& path_of(const std::string& key) const {
    static const std::map<std::string, std::string RunConfig::*> members = {
        {"corpus", &RunConfig::corpus},         {"input", &RunConfig::input},
        {"lexicon", &RunConfig::lexicon},       {"tagger_corpus", &RunConfig::tagger_corpus},
        {"tagger_model", &RunConfig::tagger_model}, {"model", &RunConfig::model},
        {"model_out", &RunConfig::model_out},   {"output", &RunConfig::output}};
    return cfg_.*members.at(key);
  }

  void check_exists(const std::string& key, const std::string& path) const {
    if (!path.empty() && !fs::exists(path)) throw UsageError("'" + key + "' path does not exist: " + path);
  }

  void require(const std::string& key) const {
    const auto& path = path_of(key);
    if (path.empty()) throw UsageError(command_ + " requires '" + key + "' (--" + dashed(key) + ")");
    if (key != "model_out" && key != "output") check_exists(key, path);
  }

  void require_resources() const {
    require("lexicon");
    if (!cfg_.tagger_model.empty()) {
      check_exists("tagger_model", cfg_.tagger_model);
    } else if (!cfg_.tagger_corpus.empty()) {
      check_exists("tagger_corpus", cfg_.tagger_corpus);
    } else {
      throw UsageError(command_ + " requires 'tagger_corpus' or 'tagger_model'");
    }
  }

  TableFormat format_for(const std::string& path) const {
    return cfg_.format.empty() ? guess_table_format(path) : parse_table_format(cfg_.format);
  }

  Corpus corpus() const {
    auto c = load_corpus(cfg_.corpus, format_for(cfg_.corpus));
    if (c.empty()) throw DataError(cfg_.corpus + " holds no documents");
    return cfg_.downsample ? downsample_to_minority(c, cfg_.seed) : c;
  }

  eval::Resources resources() const {
    auto lexicon = text::SentimentLexicon::load(cfg_.lexicon);
    if (!cfg_.tagger_model.empty()) {
      const auto j = json::parse(read_file(cfg_.tagger_model), nullptr, false);
      if (j.is_discarded()) throw DataError(cfg_.tagger_model + " is not valid JSON");
      try {
        return {std::move(lexicon), text::TaggerModel::from_json(j)};
      } catch (const json::exception& e) {
        throw DataError(cfg_.tagger_model + ": malformed tagger model: " + e.what());
      }
    }
    const auto sentences = text::load_tagged_corpus(cfg_.tagger_corpus);
    try {
      return {std::move(lexicon), text::train_pos_tagger(sentences, cfg_.tagger_epochs, cfg_.seed)};
    } catch (const std::invalid_argument& e) {
      throw DataError(cfg_.tagger_corpus + ": " + e.what());
    }
  }

  eval::PipelineConfig pipeline_config() const {
    return {cfg_.featurizer_config(), cfg_.train_params(), !cfg_.class_weights.has_value()};
  }

  void emit(const std::string& text) const {
    if (cfg_.output.empty()) {
      out_ << text;
    } else {
      write_file(cfg_.output, text);
    }
  }

  void emit_report(const std::string& text, const json& j) const { emit(cfg_.json ? j.dump(2) + "\n" : text); }

  void train() {
    const auto data = corpus();
    const auto res = resources();
    if (!cfg_.tagger_out.empty()) write_file(cfg_.tagger_out, res.tagger.to_json().dump(1) + "\n");
    if (cfg_.test_fraction > 0) {
      const auto split = stratified_split(data, cfg_.test_fraction, cfg_.seed);
      const auto pipeline = eval::fit_pipeline(split.train, res, pipeline_config());
      pipeline.save(cfg_.model_out);
      const auto report = eval::evaluate(pipeline, split.test);
      emit_report(eval::render_report_text(report), report.to_json());
    } else {
      eval::fit_pipeline(data, res, pipeline_config()).save(cfg_.model_out);
    }
  }

  std::vector<InputDoc> inputs() const { return load_inputs(cfg_.input, format_for(cfg_.input)); }

  static std::vector<std::string> texts(const std::vector<InputDoc>& docs) {
    std::vector<std::string> out;
    for (const auto& d : docs) out.push_back(d.text);
    return out;
  }

  void predict() {
    const auto pipeline = eval::Pipeline::load(cfg_.model);
    const auto docs = inputs();
    const auto preds = pipeline.predict_batch(texts(docs));
    std::string text;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      json probs = json::object();
      for (std::size_t c = 0; c < kNumClasses; ++c) probs[std::string(kClassNames[c])] = preds[i].probabilities[c];
      json line = {{"id", docs[i].id}, {"label", class_name(preds[i].label)}, {"probabilities", probs}};
      text += line.dump() + "\n";
    }
    emit(text);
  }

  void explain() {
    const auto pipeline = eval::Pipeline::load(cfg_.model);
    const auto docs = inputs();
    const auto xs = pipeline.featurizer.transform_batch(texts(docs));
    const auto preds = pipeline.model.predict_batch(xs);
    std::vector<int> classes;
    for (const auto& p : preds) classes.push_back(cfg_.explain_class >= 0 ? cfg_.explain_class : p.label);
    const auto attributions = explain::explain_batch(pipeline.model, xs, classes, &pipeline.featurizer.registry());
    const auto format = explain::parse_report_format(cfg_.explain_format);
    std::vector<explain::ForceReport> reports;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      reports.push_back(explain::make_force_report(attributions[i], xs[i], docs[i].id,
                                                   static_cast<std::size_t>(cfg_.top), format));
    }
    emit(explain::render_reports(reports, format));
  }

  void evaluate() {
    const auto pipeline = eval::Pipeline::load(cfg_.model);
    const auto report = eval::evaluate(pipeline, corpus());
    emit_report(eval::render_report_text(report), report.to_json());
  }

  void cv() {
    const auto data = corpus();
    const auto res = resources();
    const auto k = static_cast<std::size_t>(cfg_.k);
    if (!cfg_.grid_eta.empty() || !cfg_.grid_max_depth.empty() || !cfg_.grid_rounds.empty()) {
      const auto grid = eval::grid_search(data, res, pipeline_config(), cfg_.grid_eta, cfg_.grid_max_depth,
                                          cfg_.grid_rounds, k, cfg_.seed);
      json j = json::array();
      for (const auto& g : grid) {
        j.push_back({{"eta", g.eta}, {"max_depth", g.max_depth}, {"rounds", g.rounds}, {"cv", g.summary.to_json()}});
      }
      emit_report(eval::render_grid_text(grid), j);
      return;
    }
    const auto summary = eval::cross_validate(data, res, pipeline_config(), k, cfg_.seed);
    emit_report(eval::render_cv_text(summary), summary.to_json());
  }

  void ablate() {
    const auto rows =
        eval::ablation(corpus(), resources(), pipeline_config(), cfg_.stages, cfg_.test_fraction, cfg_.seed);
    emit_report(eval::render_ablation_text(rows), eval::ablation_to_json(rows));
  }

  void downsample() {
    const auto data = load_corpus(cfg_.corpus, format_for(cfg_.corpus));
    const auto sampled = downsample_to_minority(data, cfg_.seed);
    write_corpus(sampled, cfg_.output, format_for(cfg_.output));
  }

  void featurize() {
    const std::string& source = cfg_.input.empty() ? cfg_.corpus : cfg_.input;
    const auto docs = load_inputs(source, format_for(source));
    const auto doc_texts = texts(docs);
    std::optional<Featurizer> fitted;
    std::optional<eval::Pipeline> loaded;
    if (!cfg_.model.empty()) {
      loaded = eval::Pipeline::load(cfg_.model);
    } else {
      const auto res = resources();
      fitted = Featurizer::fit(doc_texts, res.lexicon, res.tagger, cfg_.featurizer_config());
    }
    const Featurizer& featurizer = loaded ? loaded->featurizer : *fitted;
    const auto xs = featurizer.transform_batch(doc_texts);
    std::string text;
    char buf[64];
    for (std::size_t i = 0; i < docs.size(); ++i) {
      text += docs[i].id + "\t";
      bool first = true;
      for (const auto& [col, value] : xs[i].entries()) {
        std::snprintf(buf, sizeof buf, "%s%u:%.17g", first ? "" : " ", col, value);
        text += buf;
        first = false;
      }
      text += "\n";
    }
    write_file(cfg_.output, text);
    write_file(cfg_.output + ".registry.json", featurizer.registry().to_json().dump(1) + "\n");
  }

  void terms() {
    const auto top = eval::class_top_terms(corpus(), static_cast<std::size_t>(cfg_.top));
    json j = json::object();
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      json list = json::array();
      for (const auto& [t, f] : top[c]) list.push_back({{"term", t}, {"count", f}});
      j[std::string(kClassNames[c])] = list;
    }
    emit_report(eval::render_top_terms_text(top), j);
  }

  std::string command_;
  RunConfig cfg_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  init_threads();
  CLI::App app{"boostlex: hate/offensive speech classifier with boosted trees and SHAP explanations", "boostlex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "boostlex 1.0");

  std::string config_path;
  std::map<std::string, std::string> raw;
  std::map<std::string, std::pair<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>>> registered;
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    auto& opts = registered[cmd.name];
    opts.first = sub;
    std::set<std::string> seen;
    for (const auto& key : cmd.keys) {
      if (!seen.insert(key).second) continue;
      CLI::Option* opt = is_bool_key(key) ? sub->add_flag("--" + dashed(key))->description("set " + key + " to true")
                                          : sub->add_option("--" + dashed(key), raw[key], key);
      opts.second.emplace_back(key, opt);
    }
    if (std::find(cmd.keys.begin(), cmd.keys.end(), "seed") == cmd.keys.end()) {
      opts.second.emplace_back("seed", sub->add_option("--seed", raw["seed"], "seed"));
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    RunConfig config;
    if (!config_path.empty()) apply_config_json(config, read_config_file(config_path));
    for (const auto& [key, opt] : registered.at(command).second) {
      if (opt->count() == 0) continue;
      apply_flag(config, key, is_bool_key(key) ? "true" : raw.at(key));
    }
    Runner runner(command, config, out);
    runner.validate();
    err << "boostlex " << command << " config: " << config.to_json().dump() << "\n";
    runner.execute();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "boostlex " << command << ": usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "boostlex " << command << ": data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "boostlex " << command << ": error: " << e.what() << "\n";
    return kExitData;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace boostlex::cli
