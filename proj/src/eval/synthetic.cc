#include "boostlex/eval/synthetic.h"

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string_view>

#include "boostlex/rng.h"

namespace boostlex::eval {
namespace {

using Pool = std::vector<std::string_view>;

struct Word {
  std::string_view text;
  double valence;
};

struct ClassVocab {
  std::vector<Word> nouns;
  std::vector<Word> verbs;
  std::vector<Word> adjectives;
};

// Indexed by class: hate, offensive, neither.
const std::array<ClassVocab, kNumClasses>& vocab() {
  static const std::array<ClassVocab, kNumClasses> v = {{
      {{{"zorbs", 0}, {"kreelings", 0}, {"glimmites", 0}, {"vermin", -3.0}, {"invaders", -2.5}, {"parasites", -3.0},
        {"filth", -3.2}, {"plague", -2.8}},
       {{"deport", -2.0}, {"banish", -2.2}, {"expel", -2.0}, {"despise", -3.0}, {"loathe", -3.1}, {"hate", -3.2}},
       {{"vile", -3.1}, {"disgusting", -3.0}, {"filthy", -2.9}, {"wretched", -2.8}, {"evil", -3.4},
        {"worthless", -2.9}}},
      {{{"idiot", -1.8}, {"moron", -1.9}, {"loser", -1.6}, {"clown", -1.0}, {"jerk", -1.5}, {"fool", -1.4},
        {"crap", -1.6}, {"mess", -1.2}},
       {{"suck", -1.5}, {"whine", -1.2}, {"screw", -1.1}, {"quit", -0.8}, {"choke", -1.3}, {"annoy", -1.4}},
       {{"stupid", -1.9}, {"dumb", -1.6}, {"lame", -1.3}, {"pathetic", -1.8}, {"ugly", -1.7}, {"annoying", -1.5},
        {"trashy", -1.6}}},
      {{{"coffee", 0}, {"game", 0}, {"weekend", 0.6}, {"music", 0.5}, {"garden", 0}, {"movie", 0}, {"trip", 0},
        {"sunset", 0.8}, {"concert", 0.4}, {"recipe", 0}},
       {{"enjoy", 2.2}, {"love", 3.2}, {"watch", 0}, {"visit", 0}, {"share", 1.2}, {"cook", 0}, {"celebrate", 2.7}},
       {{"lovely", 2.8}, {"great", 3.1}, {"sunny", 1.8}, {"happy", 2.7}, {"fun", 2.3}, {"beautiful", 2.9},
        {"delicious", 2.7}}},
  }};
  return v;
}

const Pool kDeterminers = {"the", "a", "this", "that", "these", "those", "every", "some"};
const Pool kPronouns = {"they", "we", "you", "he", "she", "them"};
const Pool kPrepositions = {"of", "in", "on", "with", "for", "from", "about", "near"};
const Pool kConjunctions = {"and", "but", "or"};
const Pool kAdverbs = {"really", "always", "just", "totally", "still", "again"};
const Pool kGenericVerbs = {"are", "is", "see", "know", "think", "want"};
const Pool kNames = {"Lisbon", "Paris", "Maria", "Kenji", "Oslo", "Amara", "Chicago", "Tomas"};

const Pool kHashtags = {"#banzorbs", "#kreelingsout", "#purgeglimmites", "#nomorezorbs"};
const Pool kMentions = {"@truthfront", "@patriotvoice", "@loudcitizen", "@realnews"};
const Pool kEmoji = {"\xF0\x9F\x98\x80", "\xF0\x9F\x8E\x89", "\xF0\x9F\x98\x8A", "\xF0\x9F\x8C\x9E"};
const Pool kUrls = {"https://example.com/pics", "http://blog.example.org/post", "www.example.net/today"};

enum class Slot { kNoun, kVerb, kAdj, kDet, kPron, kPrep, kConj, kAdv, kGenericVerb, kName };

// Gold tag for each slot.
std::string_view slot_tag(Slot s) {
  switch (s) {
    case Slot::kNoun: return "NN";
    case Slot::kVerb: return "VB";
    case Slot::kAdj: return "JJ";
    case Slot::kDet: return "DT";
    case Slot::kPron: return "PRP";
    case Slot::kPrep: return "IN";
    case Slot::kConj: return "CC";
    case Slot::kAdv: return "RB";
    case Slot::kGenericVerb: return "VB";
    case Slot::kName: return "NNP";
  }
  return "X";
}

using Template = std::vector<Slot>;

const std::vector<Template>& templates() {
  using S = Slot;
  static const std::vector<Template> t = {
      {S::kPron, S::kVerb, S::kDet, S::kAdj, S::kNoun},
      {S::kDet, S::kNoun, S::kGenericVerb, S::kAdv, S::kAdj},
      {S::kPron, S::kAdv, S::kVerb, S::kDet, S::kNoun, S::kPrep, S::kDet, S::kNoun},
      {S::kDet, S::kAdj, S::kNoun, S::kConj, S::kDet, S::kAdj, S::kNoun},
      {S::kPron, S::kGenericVerb, S::kDet, S::kNoun, S::kGenericVerb, S::kAdj},
      {S::kPron, S::kVerb, S::kDet, S::kNoun, S::kPrep, S::kName},
  };
  return t;
}

template <typename T>
const T& pick(const std::vector<T>& pool, Pcg32& rng) {
  return pool[rng.bounded(static_cast<std::uint32_t>(pool.size()))];
}

std::size_t other_class(std::size_t c, Pcg32& rng) { return (c + 1 + rng.bounded(2)) % kNumClasses; }

// Class whose pool/habit is used for one draw.
std::size_t source_class(std::size_t c, double noise, Pcg32& rng) {
  return rng.uniform() < noise ? other_class(c, rng) : c;
}

std::string_view fill(Slot s, std::size_t c, double noise, Pcg32& rng) {
  const auto& v = vocab();
  switch (s) {
    case Slot::kNoun: return pick(v[source_class(c, noise, rng)].nouns, rng).text;
    case Slot::kVerb: return pick(v[source_class(c, noise, rng)].verbs, rng).text;
    case Slot::kAdj: return pick(v[source_class(c, noise, rng)].adjectives, rng).text;
    case Slot::kDet: return pick(kDeterminers, rng);
    case Slot::kPron: return pick(kPronouns, rng);
    case Slot::kPrep: return pick(kPrepositions, rng);
    case Slot::kConj: return pick(kConjunctions, rng);
    case Slot::kAdv: return pick(kAdverbs, rng);
    case Slot::kGenericVerb: return pick(kGenericVerbs, rng);
    case Slot::kName: return pick(kNames, rng);
  }
  return "";
}

// The name template is favored by the neither class.
const Template& pick_template(std::size_t c, Pcg32& rng) {
  const auto& t = templates();
  if (c == 2 && rng.uniform() < 0.3) return t.back();
  return t[rng.bounded(static_cast<std::uint32_t>(t.size() - 1))];
}

std::string sentence(std::size_t c, double noise, Pcg32& rng) {
  const auto& tmpl = pick_template(c, rng);
  std::vector<std::string> words;
  for (auto s : tmpl) words.emplace_back(fill(s, c, noise, rng));
  // Offensive habit: shout one content word.
  if (source_class(c, noise, rng) == 1 && rng.uniform() < 0.6) {
    auto& w = words[rng.bounded(static_cast<std::uint32_t>(words.size()))];
    for (auto& ch : w) {
      if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
    }
  }
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  switch (source_class(c, noise, rng)) {
    case 0: out += rng.uniform() < 0.5 ? "." : ""; break;
    case 1: out += rng.uniform() < 0.7 ? std::string(1 + rng.bounded(3), '!') : "?"; break;
    default: out += rng.uniform() < 0.85 ? "." : ""; break;
  }
  return out;
}

std::string document(std::size_t c, double noise, Pcg32& rng) {
  std::string text;
  // Hate habits: retweets, mentions, hashtags.
  if (source_class(c, noise, rng) == 0) {
    if (rng.uniform() < 0.15) text += "RT ";
    if (rng.uniform() < 0.6) text += std::string(pick(kMentions, rng)) + " ";
  }
  text += sentence(c, noise, rng);
  if (rng.uniform() < 0.4) text += " " + sentence(c, noise, rng);
  const auto tail = source_class(c, noise, rng);
  if (tail == 0 && rng.uniform() < 0.6) text += " " + std::string(pick(kHashtags, rng));
  if (tail == 2) {
    if (rng.uniform() < 0.5) text += " " + std::string(pick(kEmoji, rng));
    if (rng.uniform() < 0.35) text += " " + std::string(pick(kUrls, rng));
  }
  return text;
}

}  // namespace

Corpus generate_synthetic_corpus(const SyntheticConfig& config) {
  if (!(config.noise >= 0.0 && config.noise <= 1.0)) throw std::invalid_argument("noise must lie in [0, 1]");
  if (config.docs_per_class < 2) throw std::invalid_argument("need at least two docs per class");
  Pcg32 rng(config.seed);
  std::vector<std::size_t> classes;
  for (std::size_t c = 0; c < kNumClasses; ++c) classes.insert(classes.end(), config.docs_per_class, c);
  shuffle(std::span<std::size_t>(classes), rng);

  std::vector<LabeledDoc> docs;
  docs.reserve(classes.size());
  char id[32];
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::snprintf(id, sizeof id, "syn-%06zu", i + 1);
    docs.push_back({id, document(classes[i], config.noise, rng), static_cast<Label>(classes[i])});
  }
  return Corpus(std::move(docs));
}

std::vector<text::TaggedSentence> generate_tagged_sentences(std::size_t count, std::uint64_t seed) {
  Pcg32 rng(seed, 0x9e3779b97f4a7c15ULL);
  const auto& t = templates();
  std::vector<text::TaggedSentence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = static_cast<std::size_t>(rng.bounded(kNumClasses));
    const auto& tmpl = t[rng.bounded(static_cast<std::uint32_t>(t.size()))];
    text::TaggedSentence s;
    for (auto slot : tmpl) {
      s.words.emplace_back(fill(slot, c, 0.0, rng));
      s.tags.emplace_back(slot_tag(slot));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<std::string, double>> synthetic_valences() {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& v : vocab()) {
    for (const auto* pool : {&v.nouns, &v.verbs, &v.adjectives}) {
      for (const auto& w : *pool) {
        if (w.valence != 0) out.emplace_back(std::string(w.text), w.valence);
      }
    }
  }
  return out;
}

}  // namespace boostlex::eval
