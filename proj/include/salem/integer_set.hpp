#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace salem {

/// A finite set of non-negative integers below a declared horizon N.
/// Elements are kept strictly increasing.
class IntegerSet {
 public:
  IntegerSet() = default;

  /// Throws std::invalid_argument unless elements are strictly increasing,
  /// non-negative and below horizon, and horizon >= 1.
  IntegerSet(std::vector<std::int64_t> elements, std::int64_t horizon);

  /// Sorts and deduplicates; horizon defaults to max + 1 (1 for the empty set).
  static IntegerSet from_unsorted(std::vector<std::int64_t> values, std::int64_t horizon = 0);

  std::span<const std::int64_t> elements() const { return elements_; }
  std::int64_t horizon() const { return horizon_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(std::int64_t n) const;
  /// |A ∩ [0, n)|.
  std::int64_t count_below(std::int64_t n) const;
  /// A ∩ [0, n) with horizon n.
  IntegerSet truncated(std::int64_t n) const;

  friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

 private:
  std::vector<std::int64_t> elements_;
  std::int64_t horizon_ = 1;
};

/// Constant-time membership for sets with moderate horizons; falls back to
/// binary search above the bitmap limit.
class MembershipIndex {
 public:
  explicit MembershipIndex(const IntegerSet& set);
  bool contains(std::int64_t n) const {
    if (n < 0 || n >= horizon_) return false;
    if (!bits_.empty()) return bits_[static_cast<std::size_t>(n)];
    return set_->contains(n);
  }

 private:
  const IntegerSet* set_;
  std::int64_t horizon_;
  std::vector<bool> bits_;
};

/// Integer-set text format: optional first line "# horizon=N", then one
/// base-10 integer per line, strictly increasing.
IntegerSet read_integer_set(std::istream& in);
IntegerSet load_integer_set(const std::string& path);
void write_integer_set(std::ostream& out, const IntegerSet& set);
std::string format_integer_set(const IntegerSet& set);

}  // namespace salem
