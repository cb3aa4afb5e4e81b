#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsc/error.hpp"

namespace gsc {

// A generator or a formal inverse. Generator k has code 2k, its inverse 2k+1,
// so inversion is `code ^ 1`: an involution without fixed points.
struct Letter {
  std::uint32_t code = 0;

  constexpr Letter() = default;
  constexpr explicit Letter(std::uint32_t c) : code(c) {}

  static constexpr Letter generator(std::uint32_t index) { return Letter{2 * index}; }

  constexpr Letter inverse() const { return Letter{code ^ 1u}; }
  constexpr bool is_inverse() const { return (code & 1u) != 0; }
  constexpr std::uint32_t generator_index() const { return code >> 1; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;
};

using Word = std::vector<Letter>;

inline Word inverse(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w) {
      h ^= l.code + 0x9e3779b9u;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// The generating set S. Letters are named; a trailing apostrophe denotes the
// formal inverse ("a'" is a^{-1}).
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (n.empty()) throw InputError("alphabet: empty letter name");
      if (n.find('\'') != std::string::npos)
        throw InputError("alphabet: letter name '" + n + "' contains an apostrophe");
      if (!index_.emplace(n, static_cast<std::uint32_t>(i)).second)
        throw InputError("alphabet: duplicate letter '" + n + "'");
    }
  }

  std::size_t size() const { return names_.size(); }
  std::size_t letter_count() const { return 2 * names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

  std::string format(Letter l) const {
    auto idx = l.generator_index();
    std::string base = idx < names_.size() ? names_[idx] : ("#" + std::to_string(idx));
    return l.is_inverse() ? base + "'" : base;
  }

  // Accepts "a" or "a'"; anything else ("a''", unknown names) is an InputError.
  Letter parse_letter(std::string_view token) const {
    std::string_view base = token;
    bool inv = false;
    if (!base.empty() && base.back() == '\'') {
      inv = true;
      base.remove_suffix(1);
    }
    if (base.empty() || base.find('\'') != std::string_view::npos)
      throw InputError("malformed label '" + std::string(token) + "'");
    auto it = index_.find(std::string(base));
    if (it == index_.end()) throw InputError("unknown letter '" + std::string(token) + "'");
    Letter l = Letter::generator(it->second);
    return inv ? l.inverse() : l;
  }

  std::string format(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += format(w[i]);
    }
    return out;
  }

  // Words are written as space-separated letters ("a b' c"). A compact form
  // without spaces is accepted when every letter name is a single character.
  Word parse_word(std::string_view text) const {
    Word w;
    bool spaced = text.find(' ') != std::string_view::npos;
    if (spaced) {
      std::size_t i = 0;
      while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        if (j > i) w.push_back(parse_letter(text.substr(i, j - i)));
        i = j;
      }
      return w;
    }
    if (text.empty()) return w;
    if (contains(text)) return {parse_letter(text)};
    for (std::size_t i = 0; i < text.size();) {
      std::size_t len = 1;
      if (i + 1 < text.size() && text[i + 1] == '\'') len = 2;
      w.push_back(parse_letter(text.substr(i, len)));
      i += len;
    }
    return w;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

inline Word free_reduce(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (Letter l : w) {
    if (!r.empty() && r.back() == l.inverse())
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

inline bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

// Freely and cyclically reduces: the result is a conjugate of w.
inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

}  // namespace gsc
