#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gsc/alphabet.hpp"
#include "gsc/error.hpp"

namespace gsc {

// A permutation of {0, ..., n-1} acting on the right: x . p = p[x],
// so x . (p q) = (x . p) . q.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto x : img_) {
      if (x >= img_.size() || seen[x]) throw InputError("not a permutation");
      seen[x] = true;
    }
  }
  static Perm identity(std::size_t n) {
    Perm p;
    p.img_.resize(n);
    std::iota(p.img_.begin(), p.img_.end(), 0u);
    return p;
  }

  std::size_t degree() const { return img_.size(); }
  std::uint32_t operator[](std::size_t x) const { return img_[x]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<std::uint32_t>(i);
    return r;
  }

  // this then other
  Perm operator*(const Perm& other) const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = other.img_[img_[i]];
    return r;
  }

  std::size_t order() const {
    std::size_t result = 1;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  // Cycle lengths in non-increasing order.
  std::vector<std::size_t> cycle_type() const {
    std::vector<std::size_t> t;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      t.push_back(len);
    }
    std::sort(t.rbegin(), t.rend());
    return t;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < img_.size(); ++i) s += (i ? "," : "") + std::to_string(img_[i]);
    return s + "]";
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<std::uint32_t> img_;
};

// Images of the generators of an alphabet in Sym(n); inverse letters act by
// the inverse permutation.
struct Action {
  std::size_t n = 1;
  std::vector<Perm> images;  // one per generator

  Perm image(Letter l) const {
    const Perm& p = images.at(l.generator_index());
    return l.is_inverse() ? p.inverse() : p;
  }

  std::uint32_t apply(std::uint32_t x, Letter l) const {
    const Perm& p = images.at(l.generator_index());
    if (!l.is_inverse()) return p[x];
    for (std::uint32_t y = 0; y < p.degree(); ++y)
      if (p[y] == x) return y;
    return x;
  }

  Perm evaluate(const Word& w) const {
    Perm r = Perm::identity(n);
    for (Letter l : w) r = r * image(l);
    return r;
  }

  static Action trivial(std::size_t generators, std::size_t n) {
    return Action{n, std::vector<Perm>(generators, Perm::identity(n))};
  }
};

}  // namespace gsc
