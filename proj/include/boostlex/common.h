#ifndef BOOSTLEX_COMMON_H_
#define BOOSTLEX_COMMON_H_

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace boostlex {

// Bad invocation: unknown config key, missing path, malformed flag.
// The CLI maps it to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: unparsable files, unknown labels, version mismatches.
// The CLI maps it to exit status 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Class indices are fixed and recorded in every model file.
enum class Label : int { kHate = 0, kOffensive = 1, kNeither = 2 };

inline constexpr std::size_t kNumClasses = 3;

inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "hate", "offensive", "neither"};

inline constexpr int to_index(Label label) { return static_cast<int>(label); }

inline constexpr std::string_view class_name(int index) {
  return kClassNames.at(static_cast<std::size_t>(index));
}

// Case-insensitive, whitespace-trimmed parse. Throws DataError on anything
// outside {hate, offensive, neither}.
Label parse_label(std::string_view text);

using ClassCounts = std::array<std::size_t, kNumClasses>;

}  // namespace boostlex

#endif  // BOOSTLEX_COMMON_H_
