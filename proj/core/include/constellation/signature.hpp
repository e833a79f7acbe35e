#pragma once

#include <string>
#include <vector>

namespace constellation {

/// Sorted multiset of set sizes of a constellation, e.g. <5,5,5,4>_6.
///
/// Sizes follow the counting convention in which a complete set of d lines
/// (or d orthonormal vectors) is recorded as d-1, so every entry lies in
/// 1..d-1 and there are at most d+1 entries.
class Signature {
 public:
  Signature(int order, std::vector<int> sizes);

  int order() const noexcept { return order_; }
  const std::vector<int>& sizes() const noexcept { return sizes_; }
  int total() const noexcept;

  /// Expanded notation: "⟨5,5,5,4⟩₆" (angle) or "{5,4,3,2}₆" (brace).
  std::string expanded(bool braces = false) const;
  /// Power notation: "⟨5³,4⟩₆" or "{5²,3,1}₆".
  std::string compact(bool braces = false) const;

  bool operator==(const Signature&) const = default;

 private:
  int order_;
  std::vector<int> sizes_;
};

/// Componentwise dominance after zero padding. Existence of a constellation
/// with signature a implies existence of every b with dominates(a, b).
bool dominates(const Signature& a, const Signature& b);

/// Parses "5,4,3,2" into sizes (unsorted, unvalidated).
std::vector<int> parse_size_list(const std::string& text);

}  // namespace constellation
