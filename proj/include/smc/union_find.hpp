#ifndef SMC_UNION_FIND_HPP
#define SMC_UNION_FIND_HPP

#include <cstddef>
#include <numeric>
#include <vector>

namespace smc {

// Merge-only disjoint sets; merges commute, so concurrent refinement in
// depth is well defined.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t p) {
    std::size_t root = p;
    while (root != parent_[root]) root = parent_[root];
    while (p != root) {
      std::size_t next = parent_[p];
      parent_[p] = root;
      p = next;
    }
    return root;
  }

  void merge(std::size_t a, std::size_t b) {
    std::size_t i = find(a), j = find(b);
    if (i == j) return;
    if (size_[i] < size_[j]) std::swap(i, j);
    parent_[j] = i;
    size_[i] += size_[j];
    --count_;
  }

  bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t count() const { return count_; }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t count_;
};

}  // namespace smc

#endif  // SMC_UNION_FIND_HPP
