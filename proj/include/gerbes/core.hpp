#ifndef GERBES_CORE_HPP
#define GERBES_CORE_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gerbes {

// Error taxonomy mirrors the CLI exit codes: validation failures carry a
// machine-readable code plus a concrete witness in the message.
class error : public std::runtime_error {
 public:
  error(std::string code, std::string const& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  std::string const& code() const { return code_; }

 private:
  std::string code_;
};

// an object failed one of its invariants (exit code 1)
class validation_error : public error {
 public:
  using error::error;
};

// malformed input (exit code 2)
class parse_error : public error {
 public:
  using error::error;
};

// configured resource cap exceeded (exit code 3)
class cap_error : public error {
 public:
  using error::error;
};

// internal consistency check; firing one is a bug, not bad input
#define GERBES_CHECK(cond, msg)                                         \
  do {                                                                  \
    if (!(cond)) throw std::logic_error(std::string("internal: ") + msg); \
  } while (0)

inline void require(bool cond, std::string const& code, std::string const& witness) {
  if (!cond) throw validation_error(code, code + ": " + witness);
}

// Weighted quick-union with path halving.
class UnionFind {
 public:
  explicit UnionFind(int n = 0) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }
  int size() const { return static_cast<int>(parent_.size()); }

  // relabels classes 0..k-1 in order of least member; returns (class-of-x, k)
  std::pair<std::vector<int>, int> compress() {
    int n = size();
    std::vector<int> cls(n, -1);
    int k = 0;
    for (int i = 0; i < n; ++i) {
      int r = find(i);
      if (cls[r] < 0) cls[r] = k++;
    }
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = cls[find(i)];
    return {out, k};
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

inline std::string show(int v) { return std::to_string(v); }

template <typename... Ts>
std::string cat(Ts&&... parts) {
  std::string out;
  ((out += parts), ...);
  return out;
}

}  // namespace gerbes

#endif  // GERBES_CORE_HPP
