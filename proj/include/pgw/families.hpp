#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgw/group.hpp"

namespace pgw {

enum class FamilyKind { abelian, lm_example, sd16, mod27, pst, custom_matrix };

const char* to_string(FamilyKind k);
FamilyKind family_kind_from(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::abelian;
  uint64_t p = 0;
  int l = 0;
  std::vector<int> alphas;
  int d = 0;
  int s = 0;
  int t = 0;
  uint64_t modulus = 0;
  std::vector<std::vector<std::vector<long long>>> generator_rows;

  static FamilySpec make_abelian(uint64_t p, std::vector<int> alphas);
  static FamilySpec make_lm_example(uint64_t p, int l);
  static FamilySpec make_sd16();
  static FamilySpec make_mod27();
  static FamilySpec make_pst(uint64_t p, int d, int s, int t);
  static FamilySpec make_custom(uint64_t modulus,
                                std::vector<std::vector<std::vector<long long>>> gens);

  std::string id() const;
};

// Family instance after construction: a concrete table when the family is
// realized by matrices, plus the invariant snapshot used by the bounds.
// Pinned realizations self-validate (the checks listed in `validations`
// ran and passed; construction throws otherwise).
struct BuiltFamily {
  FamilySpec spec;
  std::optional<GroupTable> table;
  GroupInvariants inv;
  std::vector<long long> gamma_order_exps;  // order exps of gamma_1, gamma_2, ...
  std::vector<std::string> validations;

  long long gamma_order_exp(int i) const {  // gamma_i, 1-based; trivial past the series
    return (i >= 1 && static_cast<size_t>(i) <= gamma_order_exps.size())
               ? gamma_order_exps[static_cast<size_t>(i) - 1]
               : 0;
  }
  std::optional<long long> derived_order_exp() const;
};

BuiltFamily build_family(const FamilySpec& spec, size_t closure_cap = size_t{1} << 18);

// dihedral group of order 8, realized mod 4; the non-powerful control
GroupTable dihedral8();

// JSON file {"modulus": M, "generators": [[[row],[row]],...]}; entries are
// reduced by the loader
FamilySpec load_custom_spec(const std::string& path);

}  // namespace pgw
