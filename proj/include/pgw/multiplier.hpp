#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgw/witt.hpp"

namespace pgw {

// Finite abelian p-group in invariant-factor form Z_{p^a1} + ... + Z_{p^ad}
// with a1 >= a2 >= ... >= ad >= 1. Also used for multiplier structures.
struct AbelianPGroup {
  uint64_t p = 2;
  std::vector<int> alphas;  // non-increasing

  static AbelianPGroup make(uint64_t p, std::vector<int> alphas);

  int d() const { return static_cast<int>(alphas.size()); }
  bool trivial() const { return alphas.empty(); }
  long long order_exp() const;
  int exponent_exp() const { return alphas.empty() ? 0 : alphas.front(); }
  // second-largest invariant, 0 when d <= 1 (exponent of the multiplier)
  int second_exp() const { return alphas.size() < 2 ? 0 : alphas[1]; }

  bool operator==(const AbelianPGroup&) const = default;
};

// Z_{p^a2}^(b2) + Z_{p^a3}^(b3-b2) + ... + Z_{p^ad}^(bd-b_{d-1}) with
// b_i = witt_chi(i, c+1); trivial for cyclic groups.
AbelianPGroup abelian_multiplier(const AbelianPGroup& g, int c);

// Z_{p^s}^(chi_{c+1}(d)) + Z_{p^t}^(chi_{c+2}(d)) for the relatively free
// class-2 family P_{s,t} on d generators, p odd, s >= t >= 1.
AbelianPGroup pst_multiplier(uint64_t p, int d, int s, int t, int c);

struct StructureInvariants {
  long long order_exp = 0;
  int d = 0;
  int e = 0;
};
StructureInvariants structure_invariants(const AbelianPGroup& m);

struct CatalogEntry {
  std::string family_key;
  int c = 1;
  AbelianPGroup multiplier;
  std::string source;
};

// Known multiplier structures keyed by (family, c). Ships with the two
// entries used by the bundled example groups; extensible via a JSON file
// [{"family_key","c","p","alphas","source"}, ...].
class Catalog {
public:
  static Catalog builtin();
  static Catalog load_file(const std::string& path);  // builtin + file entries

  const CatalogEntry& lookup(const std::string& family_key, int c) const;
  std::optional<CatalogEntry> find(const std::string& family_key, int c) const;
  size_t size() const { return entries_.size(); }

private:
  std::vector<CatalogEntry> entries_;
};

}  // namespace pgw
