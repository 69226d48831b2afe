#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kposet {

// Symbolic cardinality of a node class: a concrete finite count, aleph0,
// or beta (the ambient size of the whole poset, at least aleph0).
// Total order: finite(a) < finite(b) iff a < b, and finite(n) < aleph0 < beta.
// Addition is exact on finite values and absorbs into the larger tag otherwise.
class CardTag {
 public:
  enum class Kind { Finite, Aleph0, Beta };

  constexpr CardTag() : kind_(Kind::Finite), count_(0) {}

  static constexpr CardTag finite(std::uint64_t n) { return CardTag(Kind::Finite, n); }
  static constexpr CardTag aleph0() { return CardTag(Kind::Aleph0, 0); }
  static constexpr CardTag beta() { return CardTag(Kind::Beta, 0); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_infinite() const { return kind_ != Kind::Finite; }

  constexpr std::uint64_t count() const {
    return kind_ == Kind::Finite ? count_ : 0;
  }

  friend constexpr bool operator==(const CardTag& a, const CardTag& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.count_ == b.count_);
  }
  friend constexpr bool operator!=(const CardTag& a, const CardTag& b) { return !(a == b); }

  friend constexpr bool operator<(const CardTag& a, const CardTag& b) {
    if (a.kind_ != b.kind_) return rank(a.kind_) < rank(b.kind_);
    return a.kind_ == Kind::Finite && a.count_ < b.count_;
  }
  friend constexpr bool operator<=(const CardTag& a, const CardTag& b) { return a < b || a == b; }
  friend constexpr bool operator>(const CardTag& a, const CardTag& b) { return b < a; }
  friend constexpr bool operator>=(const CardTag& a, const CardTag& b) { return b <= a; }

  friend constexpr CardTag operator+(const CardTag& a, const CardTag& b) {
    if (a.kind_ == Kind::Finite && b.kind_ == Kind::Finite)
      return finite(a.count_ + b.count_);
    return a < b ? b : a;
  }
  CardTag& operator+=(const CardTag& other) { return *this = *this + other; }

  // Text form used by the document format: "finite:N" | "aleph0" | "beta".
  std::string to_string() const {
    switch (kind_) {
      case Kind::Aleph0: return "aleph0";
      case Kind::Beta: return "beta";
      default: return "finite:" + std::to_string(count_);
    }
  }

  static CardTag parse(const std::string& text) {
    if (text == "aleph0") return aleph0();
    if (text == "beta") return beta();
    if (text.rfind("finite:", 0) == 0) {
      const std::string digits = text.substr(7);
      if (digits.empty() || digits.size() > 18 ||
          digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad cardinality literal: " + text);
      return finite(std::stoull(digits));
    }
    throw std::invalid_argument("bad cardinality literal: " + text);
  }

 private:
  constexpr CardTag(Kind kind, std::uint64_t count) : kind_(kind), count_(count) {}

  static constexpr int rank(Kind k) {
    return k == Kind::Finite ? 0 : (k == Kind::Aleph0 ? 1 : 2);
  }

  Kind kind_;
  std::uint64_t count_;
};

}  // namespace kposet
