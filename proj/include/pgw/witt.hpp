#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pgw/error.hpp"

namespace pgw {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

int mobius(uint64_t m);

// Number of basic commutators of weight `weight` on `letters` letters:
// (1/n) * sum_{m | n} mu(m) d^{n/m}. The division is asserted exact.
BigInt witt_chi(uint64_t letters, uint64_t weight);
long long witt_chi_ll(uint64_t letters, uint64_t weight);

// Node of the Hall family. Leaves are the letters; an internal node (u,v)
// stands for the commutator [u,v] of two earlier basis elements.
struct BasicCommutator {
  int weight = 1;
  int left = -1;   // ord of left argument, -1 for leaves
  int right = -1;  // ord of right argument, -1 for leaves
  int leaf = -1;   // 0-based letter index for leaves, -1 otherwise
  uint32_t leaf_mask = 0;  // set of letters occurring in the tree
};

// All basic commutators of weight <= max_weight, in the fixed total order:
// by weight, then lexicographically by (left ord, right ord); leaves in
// letter order. Normal forms elsewhere depend on this order being stable.
class CommutatorBasis {
public:
  static CommutatorBasis build(int letters, int max_weight, size_t cap = 500);

  int letters() const { return letters_; }
  int max_weight() const { return max_weight_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const BasicCommutator& at(int ord) const { return elems_[static_cast<size_t>(ord)]; }

  int weight_begin(int w) const { return weight_begin_[static_cast<size_t>(w)]; }
  int weight_end(int w) const { return weight_begin_[static_cast<size_t>(w) + 1]; }
  int count_weight(int w) const { return weight_end(w) - weight_begin(w); }

  // [u,v] is a basic pair iff u > v and, when u = [u1,u2], u2 <= v.
  bool is_basic_pair(int u, int v) const;
  // ord of the basis element [u,v]; -1 when the pair is not in the basis
  int pair_ord(int u, int v) const;

  std::string format(int ord) const;  // leaf i -> "x_{i+1}", pair -> "[u,v]"

private:
  int letters_ = 0;
  int max_weight_ = 0;
  std::vector<BasicCommutator> elems_;
  std::vector<int> weight_begin_;
  std::map<std::pair<int, int>, int> pair_index_;
};

}  // namespace pgw
