#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "boostlex/cli/commands.h"
#include "boostlex/cli/config.h"
#include "boostlex/eval/synthetic.h"
#include "test_util.h"

namespace boostlex::cli {
namespace {

namespace fs = std::filesystem;
using boostlex::testing::data_path;
using boostlex::testing::read_text;
using boostlex::testing::write_text;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = boostlex::testing::temp_dir();
    corpus_ = (dir_ / "corpus.csv").string();
    write_corpus(eval::generate_synthetic_corpus({40, 0.2, 3}), corpus_, TableFormat::kCsv);
  }

  std::vector<std::string> resources() const {
    return {"--lexicon", data_path("lexicon.tsv").string(), "--tagger-corpus",
            data_path("tagged_sentences.txt").string()};
  }

  std::vector<std::string> train_args(const std::string& model) const {
    std::vector<std::string> a = {"train", "--corpus", corpus_, "--model-out", model, "--rounds", "8",
                                  "--max-depth", "3", "--eta", "0.3", "--seed", "5"};
    for (const auto& r : resources()) a.push_back(r);
    return a;
  }

  fs::path dir_;
  std::string corpus_;
};

TEST(Config, FlagOverridesFile) {
  RunConfig c;
  apply_config_json(c, nlohmann::json::parse(R"({"seed": 7, "eta": 0.05})"));
  EXPECT_EQ(c.seed, 7u);
  apply_flag(c, "seed", "9");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.eta, 0.05);
  EXPECT_EQ(c.to_json()["seed"], 9);
}

TEST(Config, UnknownKeyAndTypeMismatch) {
  RunConfig c;
  try {
    apply_config_json(c, nlohmann::json::parse(R"({"lr": 0.1})"));
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("'lr'"), std::string::npos) << e.what();
  }
  try {
    apply_config_json(c, nlohmann::json::parse(R"({"rounds": "many"})"));
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("rounds"), std::string::npos) << e.what();
  }
  EXPECT_THROW(apply_flag(c, "rounds", "x"), UsageError);
  apply_flag(c, "stages", "1,3");
  EXPECT_EQ(c.stages, (std::vector<int>{1, 3}));
  apply_flag(c, "class_weights", "1,2,3");
  ASSERT_TRUE(c.class_weights.has_value());
  EXPECT_EQ((*c.class_weights)[2], 3.0);
  c.eta = 2;
  EXPECT_THROW(validate_ranges(c), UsageError);
}

TEST_F(CliTest, ConfigFileThenFlagEchoesResolvedSeed) {
  const auto config = dir_ / "run.json";
  write_text(config, R"({"seed": 7})");
  const auto r = invoke({"downsample", "--config", config.string(), "--seed", "9", "--corpus", corpus_, "--output",
                         (dir_ / "down.csv").string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.err.find("\"seed\":9"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownConfigKeyIsUsageError) {
  const auto config = dir_ / "run.json";
  write_text(config, R"({"lr": 0.1})");
  const auto r = invoke({"downsample", "--config", config.string(), "--corpus", corpus_, "--output",
                         (dir_ / "down.csv").string()});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("lr"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingCorpusFailsBeforeWork) {
  const auto model = (dir_ / "m.json").string();
  auto args = train_args(model);
  args[2] = (dir_ / "nope.csv").string();
  EXPECT_EQ(invoke(args).status, kExitUsage);
  std::vector<std::string> no_corpus = {"train", "--model-out", model};
  for (const auto& a : resources()) no_corpus.push_back(a);
  EXPECT_EQ(invoke(no_corpus).status, kExitUsage);
  EXPECT_FALSE(fs::exists(model));
  EXPECT_EQ(invoke({"bogus"}).status, kExitUsage);
  EXPECT_EQ(invoke({"train", "--no-such-flag", "1"}).status, kExitUsage);
}

TEST_F(CliTest, BadDataIsExitTwo) {
  const auto bad = dir_ / "bad.csv";
  write_text(bad, "id,text,label\n1,hello,angry\n");
  const auto r = invoke({"downsample", "--corpus", bad.string(), "--output", (dir_ / "o.csv").string()});
  EXPECT_EQ(r.status, kExitData) << r.err;
  const auto junk = dir_ / "junk.json";
  write_text(junk, "{\"format_version\": 1, ");
  EXPECT_EQ(invoke({"predict", "--model", junk.string(), "--input", corpus_}).status, kExitData);
}

TEST_F(CliTest, TrainPredictExplain) {
  const auto model = (dir_ / "m.json").string();
  const auto before = read_text(corpus_);
  const auto t = invoke(train_args(model));
  ASSERT_EQ(t.status, kExitOk) << t.err;
  EXPECT_EQ(read_text(corpus_), before);

  const auto p = invoke({"predict", "--model", model, "--input", corpus_});
  ASSERT_EQ(p.status, kExitOk) << p.err;
  std::istringstream lines(p.out);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    const auto& probs = j["probabilities"];
    const double sum = probs["hate"].get<double>() + probs["offensive"].get<double>() + probs["neither"].get<double>();
    EXPECT_NEAR(sum, 1.0, 1e-12);
    ++count;
  }
  EXPECT_EQ(count, 120u);

  const auto one = dir_ / "one.csv";
  write_text(one, "id,text\nq1,RT @zorb you filthy vile zorbs #banzorbs\n");
  const auto e = invoke({"explain", "--model", model, "--input", one.string(), "--top", "100000"});
  ASSERT_EQ(e.status, kExitOk) << e.err;
  const std::regex header(R"(output=(-?[0-9.]+)\s+base_value=(-?[0-9.]+))");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(e.out, m, header)) << e.out;
  const double output = std::stod(m[1]), base = std::stod(m[2]);
  double sum = base;
  std::size_t terms = 0;
  const std::regex phi(R"(phi=([+-][0-9.]+))");
  for (auto it = std::sregex_iterator(e.out.begin(), e.out.end(), phi); it != std::sregex_iterator(); ++it) {
    sum += std::stod((*it)[1]);
    ++terms;
  }
  // Every printed number is rounded to 4 decimals.
  EXPECT_NEAR(sum, output, 5e-5 * static_cast<double>(terms + 2)) << e.out;
}

TEST_F(CliTest, TrainIsByteDeterministic) {
  const auto a = (dir_ / "a.json").string(), b = (dir_ / "b.json").string();
  ASSERT_EQ(invoke(train_args(a)).status, kExitOk);
  ASSERT_EQ(invoke(train_args(b)).status, kExitOk);
  EXPECT_EQ(read_text(a), read_text(b));
}

TEST_F(CliTest, AblateFiveRows) {
  std::vector<std::string> args = {"ablate", "--corpus", corpus_, "--rounds", "5", "--max-depth", "3", "--json"};
  for (const auto& r : resources()) args.push_back(r);
  const auto r = invoke(args);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 5u);
  for (int s = 0; s < 5; ++s) EXPECT_EQ(j[s]["stage"], s + 1);
}

TEST_F(CliTest, FeaturizeWritesSidecar) {
  std::vector<std::string> args = {"featurize", "--corpus", corpus_, "--stage", "3", "--output",
                                   (dir_ / "f.txt").string()};
  for (const auto& r : resources()) args.push_back(r);
  const auto r = invoke(args);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto registry = nlohmann::json::parse(read_text(dir_ / "f.txt.registry.json"));
  EXPECT_EQ(registry["names"].size(), registry["dimension"].get<std::size_t>());
  EXPECT_NE(read_text(dir_ / "f.txt").find("syn-"), std::string::npos);
}

TEST_F(CliTest, TermsAndDownsample) {
  const auto r = invoke({"terms", "--corpus", corpus_, "--top", "3"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("hate"), std::string::npos);
  const auto down = dir_ / "d.csv";
  ASSERT_EQ(invoke({"downsample", "--corpus", corpus_, "--output", down.string()}).status, kExitOk);
  const auto c = load_corpus(down, TableFormat::kCsv);
  for (auto n : c.class_counts()) EXPECT_EQ(n, 40u);
}

}  // namespace
}  // namespace boostlex::cli
