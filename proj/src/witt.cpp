#include "pgw/witt.hpp"

#include <algorithm>

namespace pgw {

int mobius(uint64_t m) {
  require(m >= 1, errc::invalid_argument, "mobius needs m >= 1");
  int factors = 0;
  for (uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return 0;
      ++factors;
    }
  }
  if (m > 1) ++factors;
  return factors % 2 == 0 ? 1 : -1;
}

BigInt witt_chi(uint64_t letters, uint64_t weight) {
  require(weight >= 1, errc::invalid_argument, "witt_chi needs weight >= 1");
  BigInt sum = 0;
  for (uint64_t m = 1; m <= weight; ++m) {
    if (weight % m != 0) continue;
    int mu = mobius(m);
    if (mu == 0) continue;
    BigInt term = boost::multiprecision::pow(BigInt(letters), static_cast<unsigned>(weight / m));
    sum += mu * term;
  }
  require(sum % weight == 0, errc::internal, "Witt sum not divisible by weight");
  return sum / weight;
}

long long witt_chi_ll(uint64_t letters, uint64_t weight) {
  BigInt v = witt_chi(letters, weight);
  require(v <= std::numeric_limits<long long>::max(), errc::invalid_argument,
          "witt_chi value does not fit in 64 bits");
  return v.convert_to<long long>();
}

CommutatorBasis CommutatorBasis::build(int letters, int max_weight, size_t cap) {
  require(letters >= 1, errc::invalid_argument, "need at least one letter");
  require(max_weight >= 1, errc::invalid_argument, "need max_weight >= 1");
  CommutatorBasis basis;
  basis.letters_ = letters;
  basis.max_weight_ = max_weight;
  basis.weight_begin_.assign(static_cast<size_t>(max_weight) + 2, 0);

  for (int i = 0; i < letters; ++i) {
    BasicCommutator leaf;
    leaf.weight = 1;
    leaf.leaf = i;
    leaf.leaf_mask = 1u << i;
    basis.elems_.push_back(leaf);
  }
  basis.weight_begin_[1] = 0;
  basis.weight_begin_[2] = letters;

  for (int w = 2; w <= max_weight; ++w) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < static_cast<int>(basis.elems_.size()); ++u) {
      const auto& eu = basis.elems_[static_cast<size_t>(u)];
      if (eu.weight >= w) break;
      int wv = w - eu.weight;
      if (wv < 1 || wv > max_weight) continue;
      for (int v = basis.weight_begin(wv); v < basis.weight_end(wv); ++v) {
        if (basis.is_basic_pair(u, v)) pairs.emplace_back(u, v);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    for (auto [u, v] : pairs) {
      require(basis.elems_.size() < cap, errc::basis_too_large, "basic commutator basis exceeds cap");
      BasicCommutator bc;
      bc.weight = w;
      bc.left = u;
      bc.right = v;
      bc.leaf_mask = basis.elems_[static_cast<size_t>(u)].leaf_mask |
                     basis.elems_[static_cast<size_t>(v)].leaf_mask;
      basis.pair_index_[{u, v}] = static_cast<int>(basis.elems_.size());
      basis.elems_.push_back(bc);
    }
    basis.weight_begin_[static_cast<size_t>(w) + 1] = static_cast<int>(basis.elems_.size());
  }
  return basis;
}

bool CommutatorBasis::is_basic_pair(int u, int v) const {
  if (u <= v) return false;
  const auto& eu = elems_[static_cast<size_t>(u)];
  return eu.left < 0 || eu.right <= v;
}

int CommutatorBasis::pair_ord(int u, int v) const {
  auto it = pair_index_.find({u, v});
  return it == pair_index_.end() ? -1 : it->second;
}

std::string CommutatorBasis::format(int ord) const {
  const auto& e = elems_[static_cast<size_t>(ord)];
  if (e.leaf >= 0) return "x" + std::to_string(e.leaf + 1);
  return "[" + format(e.left) + "," + format(e.right) + "]";
}

}  // namespace pgw
