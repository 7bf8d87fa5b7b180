#ifndef BOOSTLEX_TESTS_TEST_UTIL_H_
#define BOOSTLEX_TESTS_TEST_UTIL_H_

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "boostlex/corpus.h"

namespace boostlex::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(BOOSTLEX_DATA_DIR) / name;
}

// Fresh directory per test under the system temp dir.
inline std::filesystem::path temp_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  auto dir = std::filesystem::temp_directory_path() / "boostlex_tests" /
             (std::string(info->test_suite_name()) + "." + info->name());
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Docs "d0".."dN" with the given per-class counts, classes interleaved.
inline Corpus corpus_with_counts(std::size_t hate, std::size_t offensive, std::size_t neither) {
  std::vector<LabeledDoc> docs;
  std::size_t left[3] = {hate, offensive, neither};
  std::size_t id = 0;
  while (left[0] + left[1] + left[2] > 0) {
    for (int c = 0; c < 3; ++c) {
      if (left[c] == 0) continue;
      --left[c];
      docs.push_back({"d" + std::to_string(id), "text " + std::to_string(id), static_cast<Label>(c)});
      ++id;
    }
  }
  return Corpus(std::move(docs));
}

}  // namespace boostlex::testing

#endif  // BOOSTLEX_TESTS_TEST_UTIL_H_
