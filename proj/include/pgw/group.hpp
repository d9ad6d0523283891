#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgw/residue.hpp"

namespace pgw {

// Fully enumerated finite matrix group. Element 0 is the identity; indices
// follow breadth-first discovery order from the generators, so tables are
// reproducible. Immutable once close() returns; safe to share across
// threads. The multiplication table is cached only for |G| <= 4096.
struct GroupTable {
  static constexpr size_t kTableCacheLimit = 4096;

  ResidueModulus mod;
  int dim = 0;
  std::vector<ResidueMatrix> elements;
  std::unordered_map<std::string, int32_t> index_of;
  std::vector<int32_t> generators;
  std::vector<int32_t> inverse;
  std::vector<uint16_t> table;  // row-major, only when size() <= kTableCacheLimit
  int32_t identity = 0;

  size_t size() const { return elements.size(); }
  uint64_t p() const { return mod.p; }

  int32_t mult(int32_t a, int32_t b) const;
  int32_t inv(int32_t a) const { return inverse[static_cast<size_t>(a)]; }
  int32_t pow(int32_t a, long long e) const;
  int32_t pow_u64(int32_t a, uint64_t e) const;
  int32_t conj(int32_t g, int32_t x) const;  // x^-1 g x
  int32_t comm(int32_t a, int32_t b) const;  // a^-1 b^-1 a b
  int32_t lookup(const ResidueMatrix& m) const;

  // n with |G| = p^n; errors with not_p_group otherwise
  int order_exp() const;
};

GroupTable close(const std::vector<ResidueMatrix>& gens, size_t cap);

struct SubgroupSet {
  const GroupTable* parent = nullptr;
  std::vector<int32_t> members;         // sorted ascending
  std::vector<int32_t> generator_hint;  // some generating set, may be empty

  size_t size() const { return members.size(); }
  bool is_trivial() const { return members.size() == 1; }
  bool contains(int32_t idx) const;
  const std::vector<int32_t>& gens_or_members() const {
    return generator_hint.empty() ? members : generator_hint;
  }
};

bool subgroup_equal(const SubgroupSet& a, const SubgroupSet& b);
bool subgroup_subset(const SubgroupSet& a, const SubgroupSet& b);  // a <= b

SubgroupSet trivial_subgroup(const GroupTable& g);
SubgroupSet full_subgroup(const GroupTable& g);
SubgroupSet subgroup_generated(const GroupTable& g, std::span<const int32_t> seeds);
SubgroupSet normal_closure(const GroupTable& g, std::span<const int32_t> seeds);
// normal closure of seeds under conjugation by the given conjugators only
SubgroupSet normal_closure_under(const GroupTable& g, std::span<const int32_t> seeds,
                                 std::span<const int32_t> conjugators);
SubgroupSet product_subgroup(const GroupTable& g, const SubgroupSet& a, const SubgroupSet& b);

// [A,B]: all-pairs generation below pair_budget, otherwise generator pairs
// followed by normal closure inside <A,B>.
SubgroupSet commutator_subgroup(const GroupTable& g, const SubgroupSet& a, const SubgroupSet& b,
                                size_t pair_budget = size_t{1} << 20);

struct LowerCentralSeries {
  std::vector<SubgroupSet> terms;  // gamma_1 = G, ..., last = trivial
  int cl = 0;
};
LowerCentralSeries lower_central_series(const GroupTable& g);

struct UpperCentralSeries {
  std::vector<SubgroupSet> terms;  // Z_0 = 1, Z_1, ...
  int center_exp = 0;              // exponent-exponent of Z_1
};
UpperCentralSeries upper_central_series(const GroupTable& g);

struct DerivedSeries {
  std::vector<SubgroupSet> terms;  // G^(0) = G, ..., last = trivial
  int dl = 0;
};
DerivedSeries derived_series(const GroupTable& g);

SubgroupSet agemo(const GroupTable& g, unsigned i);  // subgroup generated by p^i-th powers
SubgroupSet agemo_of(const GroupTable& g, const SubgroupSet& h, unsigned i);
SubgroupSet power_subgroup(const GroupTable& g, uint64_t m);  // <g^m : g in G>, any m
SubgroupSet frattini(const GroupTable& g);                    // G' * agemo_1(G)

// lower exponent-p central series: P_1 = G, P_{i+1} = [P_i, G] agemo_1(P_i)
std::vector<SubgroupSet> p_series(const GroupTable& g);

int min_generators(const GroupTable& g);
int min_generators_of(const GroupTable& g, const SubgroupSet& h);
int exponent_exp(const GroupTable& g);
int exponent_exp_of(const GroupTable& g, const SubgroupSet& h);
bool is_powerful(const GroupTable& g);
bool is_normal(const GroupTable& g, const SubgroupSet& n);
bool is_powerfully_embedded(const GroupTable& g, const SubgroupSet& n);

std::vector<SubgroupSet> all_subgroups(const GroupTable& g, size_t order_budget = 512,
                                       size_t count_budget = 200000);
int special_rank(const GroupTable& g, size_t order_budget = 512);

int32_t iterated_commutator(const GroupTable& g, int32_t a, std::span<const int32_t> bs);

struct GroupInvariants {
  int order_exp = 0;
  int d = 0;
  int e = 0;
  int cl = 0;
  int dl = 0;
  std::optional<int> center_exp;
  std::optional<int> sr;
  bool powerful = false;
};
GroupInvariants compute_invariants(const GroupTable& g, size_t sr_budget = 512);

// One report line per structural clause that holds in every powerful
// p-group: powerfully embedded series terms, the p-series/agemo identities,
// agemo as a set of powers, generator powers, and subgroup rank bounds.
struct ClauseReport {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct StructureReport {
  bool all_pass = false;
  std::vector<ClauseReport> clauses;
};
StructureReport verify_powerful_structure(const GroupTable& g);

enum class SetRelation { equal, left_in_right, right_in_left, incomparable };
struct OmegaGammaReport {
  SetRelation relation = SetRelation::equal;
  size_t lhs_size = 0;  // agemo_k(gamma_{c+1}(G))
  size_t rhs_size = 0;  // [agemo_k(G), G, ..., G] (c times)
};
OmegaGammaReport compare_omega_gamma(const GroupTable& g, int c, unsigned k);

}  // namespace pgw
