#include "constellation/signature.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "constellation/error.hpp"

namespace constellation {

namespace {

std::string subscript(int n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = std::to_string(n), out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

std::string superscript(int n) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s = std::to_string(n), out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

}  // namespace

Signature::Signature(int order, std::vector<int> sizes) : order_(order), sizes_(std::move(sizes)) {
  if (order < 2) throw Error(ErrorCode::BadSignature, "order must be at least 2");
  if (sizes_.size() > static_cast<std::size_t>(order + 1)) {
    throw Error(ErrorCode::BadSignature, "more than d+1 sets");
  }
  for (int s : sizes_) {
    if (s < 1 || s > order - 1) {
      throw Error(ErrorCode::BadSignature,
                  "set size " + std::to_string(s) + " outside 1.." + std::to_string(order - 1));
    }
  }
  std::sort(sizes_.begin(), sizes_.end(), std::greater<>());
}

int Signature::total() const noexcept {
  int t = 0;
  for (int s : sizes_) t += s;
  return t;
}

std::string Signature::expanded(bool braces) const {
  std::string out = braces ? "{" : "⟨";
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sizes_[i]);
  }
  out += braces ? "}" : "⟩";
  return out + subscript(order_);
}

std::string Signature::compact(bool braces) const {
  std::string out = braces ? "{" : "⟨";
  for (std::size_t i = 0; i < sizes_.size();) {
    std::size_t j = i;
    while (j < sizes_.size() && sizes_[j] == sizes_[i]) ++j;
    if (i) out += ",";
    out += std::to_string(sizes_[i]);
    if (j - i > 1) out += superscript(static_cast<int>(j - i));
    i = j;
  }
  out += braces ? "}" : "⟩";
  return out + subscript(order_);
}

bool dominates(const Signature& a, const Signature& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::OrderMismatch, "signatures of orders " + std::to_string(a.order()) +
                                              " and " + std::to_string(b.order()));
  }
  const auto& x = a.sizes();
  const auto& y = b.sizes();
  const std::size_t n = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int xi = i < x.size() ? x[i] : 0;
    const int yi = i < y.size() ? y[i] : 0;
    if (xi < yi) return false;
  }
  return true;
}

std::vector<int> parse_size_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadSignature, "not an integer: '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::BadSignature, "not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::BadSignature, "empty size list");
  return out;
}

}  // namespace constellation
