#include "repstring/alphabet.hpp"

#include <unordered_set>

#include "repstring/errors.hpp"

namespace repstring {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error("alphabet must have at least one symbol");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error("duplicate alphabet label: " + l);
  }
}

const std::string& Alphabet::label(int index) const {
  if (index < 0 || index >= size()) {
    throw Error("alphabet index out of range: " + std::to_string(index));
  }
  return labels_[static_cast<std::size_t>(index)];
}

int Alphabet::index(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  }
  throw Error("unknown alphabet label: " + std::string(label));
}

Mid mid_from_char(char c) {
  switch (c) {
    case 'M': return Mid::M;
    case 'I': return Mid::I;
    case 'D': return Mid::D;
    default: throw Error(std::string("unknown MID symbol: ") + c);
  }
}

}  // namespace repstring
