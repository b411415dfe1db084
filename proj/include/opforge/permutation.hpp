#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace opforge {

/// Bijection on {1..n}, stored as the image sequence: images[i-1] = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int x : images_) {
      if (x < 1 || x > static_cast<int>(images_.size()) || seen[x - 1])
        throw std::invalid_argument("Permutation: not a bijection on 1..n");
      seen[x - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  // (a*b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch");
    std::vector<int> im(a.size());
    for (int i = 1; i <= a.size(); ++i) im[i - 1] = a(b(i));
    return Permutation(std::move(im));
  }

  Permutation inverse() const {
    std::vector<int> im(size());
    for (int i = 1; i <= size(); ++i) im[images_[i - 1] - 1] = i;
    return Permutation(std::move(im));
  }

  int sign() const { return parity_of(images_); }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

  // Sign of the permutation sorting `seq` ascending; requires distinct entries.
  template <class T>
  static int parity_of(const std::vector<T>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
      for (size_t j = i + 1; j < seq.size(); ++j)
        if (seq[i] > seq[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
  }

  // Sign of the permutation taking `from` to `to` (both orderings of the same
  // set of distinct values).
  template <class T>
  static int relative_sign(const std::vector<T>& from, const std::vector<T>& to) {
    return parity_of(from) * parity_of(to);
  }

  static void for_each(int n, const std::function<void(const Permutation&)>& f) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    do {
      f(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
  }

  // All (p,q)-shuffles of {1..p+q}: images ascending on 1..p and on p+1..p+q.
  static std::vector<Permutation> shuffles(int p, int q);

 private:
  std::vector<int> images_;
};

inline std::vector<Permutation> Permutation::shuffles(int p, int q) {
  int n = p + q;
  std::vector<Permutation> out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(pick.size()) == p) {
      std::vector<bool> used(n + 1, false);
      std::vector<int> im(n);
      for (int i = 0; i < p; ++i) {
        im[i] = pick[i];
        used[pick[i]] = true;
      }
      int k = p;
      for (int v = 1; v <= n; ++v)
        if (!used[v]) im[k++] = v;
      out.emplace_back(std::move(im));
      return;
    }
    for (int v = start; v <= n; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace opforge
