#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace repstring {

// A finite two-sided segment of a sequence indexed by the integers: values
// plus the index of the first element (possibly negative). Lookups outside
// the range are errors, never defaults.
template <typename T>
class Window {
 public:
  Window() : offset_(0) {}
  Window(int64_t offset, std::vector<T> values)
      : offset_(offset), values_(std::move(values)) {}

  int64_t lo() const { return offset_; }
  int64_t hi() const { return offset_ + static_cast<int64_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool contains(int64_t i) const { return i >= lo() && i <= hi(); }

  const T& at(int64_t i) const {
    check(i);
    return values_[static_cast<std::size_t>(i - offset_)];
  }
  void set(int64_t i, const T& v) {
    check(i);
    values_[static_cast<std::size_t>(i - offset_)] = v;
  }

  std::span<const T> values() const { return values_; }

  void append(std::span<const T> tail) {
    values_.insert(values_.end(), tail.begin(), tail.end());
  }
  void prepend(std::span<const T> head) {
    values_.insert(values_.begin(), head.begin(), head.end());
    offset_ -= static_cast<int64_t>(head.size());
  }

  Window restricted(int64_t new_lo, int64_t new_hi) const {
    if (new_lo > new_hi) return Window(new_lo, {});
    check(new_lo);
    check(new_hi);
    auto b = values_.begin() + static_cast<std::ptrdiff_t>(new_lo - offset_);
    auto e = values_.begin() + static_cast<std::ptrdiff_t>(new_hi - offset_) + 1;
    return Window(new_lo, std::vector<T>(b, e));
  }

  bool operator==(const Window& other) const = default;

 private:
  void check(int64_t i) const {
    if (!contains(i)) {
      throw std::out_of_range("window index " + std::to_string(i) +
                              " outside [" + std::to_string(lo()) + ", " +
                              std::to_string(hi()) + "]");
    }
  }

  int64_t offset_;
  std::vector<T> values_;
};

}  // namespace repstring
