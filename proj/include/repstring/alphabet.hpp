#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repstring {

// Finite symbol set; symbols are handled as indices 0..m-1 internally, labels
// only at the I/O boundary. Index m is reserved by the replication pipeline
// as the out-of-alphabet placeholder.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int index) const;
  int index(std::string_view label) const;  // throws on unknown label

  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
};

enum class Mid : uint8_t { M = 0, I = 1, D = 2 };

constexpr std::array<Mid, 3> kMidValues{Mid::M, Mid::I, Mid::D};

inline char mid_char(Mid s) {
  switch (s) {
    case Mid::M: return 'M';
    case Mid::I: return 'I';
    default: return 'D';
  }
}

Mid mid_from_char(char c);

inline bool selects_input(Mid s) { return s == Mid::M || s == Mid::D; }
inline bool selects_output(Mid s) { return s == Mid::M || s == Mid::I; }

}  // namespace repstring
