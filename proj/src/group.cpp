#include "pgw/group.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "pgw/kernels.hpp"

namespace pgw {

int32_t GroupTable::mult(int32_t a, int32_t b) const {
  if (!table.empty())
    return static_cast<int32_t>(table[static_cast<size_t>(a) * size() + static_cast<size_t>(b)]);
  return lookup(mat_mul(elements[static_cast<size_t>(a)], elements[static_cast<size_t>(b)]));
}

int32_t GroupTable::pow(int32_t a, long long e) const {
  if (e < 0) return pow_u64(inv(a), static_cast<uint64_t>(-e));
  return pow_u64(a, static_cast<uint64_t>(e));
}

int32_t GroupTable::pow_u64(int32_t a, uint64_t e) const {
  int32_t r = identity;
  int32_t base = a;
  while (e > 0) {
    if (e & 1) r = mult(r, base);
    base = mult(base, base);
    e >>= 1;
  }
  return r;
}

int32_t GroupTable::conj(int32_t g, int32_t x) const { return mult(mult(inv(x), g), x); }

int32_t GroupTable::comm(int32_t a, int32_t b) const {
  return mult(mult(inv(a), inv(b)), mult(a, b));
}

int32_t GroupTable::lookup(const ResidueMatrix& m) const {
  auto it = index_of.find(canonical_encode(m));
  require(it != index_of.end(), errc::internal, "element not in the closed group");
  return it->second;
}

int GroupTable::order_exp() const {
  size_t n = size();
  int k = 0;
  while (n % p() == 0) {
    n /= p();
    ++k;
  }
  require(n == 1, errc::not_p_group, "group order is not a power of p");
  return k;
}

GroupTable close(const std::vector<ResidueMatrix>& gens, size_t cap) {
  require(!gens.empty(), errc::invalid_argument, "need at least one generator");
  require(cap >= 1, errc::invalid_argument, "cap must be >= 1");
  const ResidueModulus mod = gens[0].mod();
  const int dim = gens[0].dim();
  std::vector<ResidueMatrix> multipliers;
  for (const auto& g : gens) {
    require(g.mod() == mod, errc::invalid_argument, "generators share one modulus");
    require(g.dim() == dim, errc::invalid_argument, "generators share one dimension");
    require(mat_is_invertible(g), errc::non_unit, "generator is not invertible");
    multipliers.push_back(g);
  }
  for (const auto& g : gens) multipliers.push_back(mat_inv(g));

  GroupTable t;
  t.mod = mod;
  t.dim = dim;
  t.elements.push_back(ResidueMatrix::identity(mod, dim));
  t.index_of.emplace(canonical_encode(t.elements[0]), 0);

  std::deque<int32_t> queue{0};
  while (!queue.empty()) {
    const int32_t x = queue.front();
    queue.pop_front();
    for (const auto& m : multipliers) {
      ResidueMatrix y = mat_mul(t.elements[static_cast<size_t>(x)], m);
      std::string key = canonical_encode(y);
      if (t.index_of.contains(key)) continue;
      require(t.elements.size() < cap, errc::closure_cap_exceeded, "closure exceeds cap");
      const int32_t idx = static_cast<int32_t>(t.elements.size());
      t.index_of.emplace(std::move(key), idx);
      t.elements.push_back(std::move(y));
      queue.push_back(idx);
    }
  }

  for (const auto& g : gens) t.generators.push_back(t.lookup(g));
  t.inverse = kernels::inverse_scan(t);
  if (t.size() <= GroupTable::kTableCacheLimit) t.table = kernels::mult_table(t);
  return t;
}

bool SubgroupSet::contains(int32_t idx) const {
  return std::binary_search(members.begin(), members.end(), idx);
}

bool subgroup_equal(const SubgroupSet& a, const SubgroupSet& b) { return a.members == b.members; }

bool subgroup_subset(const SubgroupSet& a, const SubgroupSet& b) {
  return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
}

SubgroupSet trivial_subgroup(const GroupTable& g) { return {&g, {g.identity}, {}}; }

SubgroupSet full_subgroup(const GroupTable& g) {
  SubgroupSet s;
  s.parent = &g;
  s.members.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) s.members[i] = static_cast<int32_t>(i);
  s.generator_hint = g.generators;
  return s;
}

SubgroupSet subgroup_generated(const GroupTable& g, std::span<const int32_t> seeds) {
  std::vector<uint8_t> in(g.size(), 0);
  std::vector<int32_t> mult;
  for (int32_t s : seeds) {
    if (s == g.identity) continue;
    mult.push_back(s);
    mult.push_back(g.inv(s));
  }
  std::sort(mult.begin(), mult.end());
  mult.erase(std::unique(mult.begin(), mult.end()), mult.end());

  std::deque<int32_t> queue;
  in[static_cast<size_t>(g.identity)] = 1;
  queue.push_back(g.identity);
  while (!queue.empty()) {
    const int32_t x = queue.front();
    queue.pop_front();
    for (int32_t m : mult) {
      const int32_t y = g.mult(x, m);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  SubgroupSet s;
  s.parent = &g;
  for (size_t i = 0; i < in.size(); ++i)
    if (in[i]) s.members.push_back(static_cast<int32_t>(i));
  s.generator_hint = mult;
  return s;
}

SubgroupSet normal_closure(const GroupTable& g, std::span<const int32_t> seeds) {
  return normal_closure_under(g, seeds, g.generators);
}

SubgroupSet normal_closure_under(const GroupTable& g, std::span<const int32_t> seeds,
                                 std::span<const int32_t> conjugators) {
  std::vector<int32_t> conj;
  for (int32_t c : conjugators) {
    conj.push_back(c);
    conj.push_back(g.inv(c));
  }
  std::sort(conj.begin(), conj.end());
  conj.erase(std::unique(conj.begin(), conj.end()), conj.end());

  std::vector<int32_t> cur(seeds.begin(), seeds.end());
  SubgroupSet h = subgroup_generated(g, cur);
  for (;;) {
    std::vector<int32_t> extra;
    for (int32_t m : h.members) {
      for (int32_t c : conj) {
        const int32_t y = g.conj(m, c);
        if (!h.contains(y)) extra.push_back(y);
      }
    }
    if (extra.empty()) break;
    std::vector<int32_t> next = h.members;
    next.insert(next.end(), extra.begin(), extra.end());
    h = subgroup_generated(g, next);
  }
  return h;
}

SubgroupSet product_subgroup(const GroupTable& g, const SubgroupSet& a, const SubgroupSet& b) {
  std::vector<int32_t> seeds = a.gens_or_members();
  const auto& bg = b.gens_or_members();
  seeds.insert(seeds.end(), bg.begin(), bg.end());
  SubgroupSet s = subgroup_generated(g, seeds);
  return s;
}

SubgroupSet commutator_subgroup(const GroupTable& g, const SubgroupSet& a, const SubgroupSet& b,
                                size_t pair_budget) {
  if (a.size() * b.size() <= pair_budget) {
    std::vector<int32_t> comms = kernels::pair_commutators(g, a.members, b.members);
    SubgroupSet s = subgroup_generated(g, comms);
    s.generator_hint = comms;
    return s;
  }
  const bool have_hints = !a.generator_hint.empty() && !b.generator_hint.empty();
  require(have_hints, errc::pair_budget_exceeded,
          "all-pairs budget exceeded and no generator hints available");
  std::vector<int32_t> comms =
      kernels::pair_commutators(g, a.generator_hint, b.generator_hint);
  std::vector<int32_t> conj = a.generator_hint;
  conj.insert(conj.end(), b.generator_hint.begin(), b.generator_hint.end());
  SubgroupSet s = normal_closure_under(g, comms, conj);
  return s;
}

LowerCentralSeries lower_central_series(const GroupTable& g) {
  LowerCentralSeries out;
  out.terms.push_back(full_subgroup(g));
  while (!out.terms.back().is_trivial()) {
    const SubgroupSet& prev = out.terms.back();
    SubgroupSet next = commutator_subgroup(g, prev, out.terms.front());
    // strict descent to the identity, or the input was not nilpotent
    require(next.size() < prev.size(), errc::not_nilpotent,
            "lower central series stabilized above the identity");
    out.terms.push_back(std::move(next));
  }
  out.cl = static_cast<int>(out.terms.size()) - 1;
  return out;
}

UpperCentralSeries upper_central_series(const GroupTable& g) {
  UpperCentralSeries out;
  out.terms.push_back(trivial_subgroup(g));
  const SubgroupSet full = full_subgroup(g);
  for (;;) {
    const SubgroupSet& z = out.terms.back();
    if (z.size() == g.size()) break;
    std::vector<uint8_t> mask = kernels::central_step(g, full.members, g.generators, z.members);
    SubgroupSet next;
    next.parent = &g;
    for (size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) next.members.push_back(full.members[i]);
    if (next.size() == z.size()) break;  // stabilized below G (non-nilpotent input)
    out.terms.push_back(std::move(next));
  }
  if (out.terms.size() > 1) {
    const auto& z1 = out.terms[1];
    std::vector<int> oe = kernels::order_exp_scan(g, z1.members);
    out.center_exp = *std::max_element(oe.begin(), oe.end());
  }
  return out;
}

DerivedSeries derived_series(const GroupTable& g) {
  DerivedSeries out;
  out.terms.push_back(full_subgroup(g));
  for (;;) {
    const SubgroupSet& prev = out.terms.back();
    if (prev.is_trivial()) break;
    SubgroupSet next = commutator_subgroup(g, prev, prev);
    require(next.size() < prev.size(), errc::not_nilpotent,
            "derived series stabilized above the identity");
    out.terms.push_back(std::move(next));
  }
  out.dl = static_cast<int>(out.terms.size()) - 1;
  return out;
}

namespace {
uint64_t p_power(uint64_t p, unsigned i) {
  uint64_t r = 1;
  for (unsigned j = 0; j < i; ++j) r *= p;
  return r;
}
}  // namespace

SubgroupSet agemo_of(const GroupTable& g, const SubgroupSet& h, unsigned i) {
  if (i == 0) return h;
  std::vector<int32_t> powers = kernels::power_map(g, h.members, p_power(g.p(), i));
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  SubgroupSet s = subgroup_generated(g, powers);
  s.generator_hint = powers;
  return s;
}

SubgroupSet agemo(const GroupTable& g, unsigned i) { return agemo_of(g, full_subgroup(g), i); }

SubgroupSet power_subgroup(const GroupTable& g, uint64_t m) {
  SubgroupSet full = full_subgroup(g);
  std::vector<int32_t> powers = kernels::power_map(g, full.members, m);
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  SubgroupSet s = subgroup_generated(g, powers);
  s.generator_hint = powers;
  return s;
}

SubgroupSet frattini(const GroupTable& g) {
  SubgroupSet derived = commutator_subgroup(g, full_subgroup(g), full_subgroup(g));
  return product_subgroup(g, derived, agemo(g, 1));
}

std::vector<SubgroupSet> p_series(const GroupTable& g) {
  std::vector<SubgroupSet> terms;
  terms.push_back(full_subgroup(g));
  for (;;) {
    const SubgroupSet& prev = terms.back();
    if (prev.is_trivial()) break;
    SubgroupSet next =
        product_subgroup(g, commutator_subgroup(g, prev, terms.front()), agemo_of(g, prev, 1));
    if (next.size() == prev.size()) break;  // stable; trivial only for p-groups
    terms.push_back(std::move(next));
  }
  return terms;
}

namespace {
int log_p_exact(uint64_t p, size_t value) {
  int k = 0;
  while (value % p == 0) {
    value /= p;
    ++k;
  }
  require(value == 1, errc::not_p_group, "index is not a power of p");
  return k;
}
}  // namespace

int min_generators(const GroupTable& g) {
  if (g.size() == 1) return 0;
  const SubgroupSet phi = frattini(g);
  return log_p_exact(g.p(), g.size() / phi.size());
}

int min_generators_of(const GroupTable& g, const SubgroupSet& h) {
  if (h.size() == 1) return 0;
  SubgroupSet derived = commutator_subgroup(g, h, h);
  SubgroupSet phi = product_subgroup(g, derived, agemo_of(g, h, 1));
  return log_p_exact(g.p(), h.size() / phi.size());
}

int exponent_exp(const GroupTable& g) { return exponent_exp_of(g, full_subgroup(g)); }

int exponent_exp_of(const GroupTable& g, const SubgroupSet& h) {
  std::vector<int> oe = kernels::order_exp_scan(g, h.members);
  return *std::max_element(oe.begin(), oe.end());
}

bool is_powerful(const GroupTable& g) {
  SubgroupSet derived = commutator_subgroup(g, full_subgroup(g), full_subgroup(g));
  SubgroupSet target = agemo(g, g.p() == 2 ? 2 : 1);
  return subgroup_subset(derived, target);
}

bool is_normal(const GroupTable& g, const SubgroupSet& n) {
  for (int32_t m : n.members)
    for (int32_t c : g.generators)
      if (!n.contains(g.conj(m, c))) return false;
  return true;
}

bool is_powerfully_embedded(const GroupTable& g, const SubgroupSet& n) {
  require(is_normal(g, n), errc::not_normal, "subgroup is not normal");
  SubgroupSet gn = commutator_subgroup(g, full_subgroup(g), n);
  SubgroupSet target = agemo_of(g, n, g.p() == 2 ? 2 : 1);
  return subgroup_subset(gn, target);
}

std::vector<SubgroupSet> all_subgroups(const GroupTable& g, size_t order_budget,
                                       size_t count_budget) {
  require(g.size() <= order_budget, errc::budget_exceeded,
          "group order exceeds the subgroup enumeration budget");
  const uint64_t p = g.p();
  std::set<std::vector<int32_t>> seen;
  std::vector<SubgroupSet> out;
  std::vector<SubgroupSet> layer;

  SubgroupSet triv = trivial_subgroup(g);
  seen.insert(triv.members);
  out.push_back(triv);
  layer.push_back(std::move(triv));

  // cyclic extension: every subgroup of order p^(m+1) is <H, x> for some
  // enumerated H of index p in it, with x normalizing H and x^p in H
  while (!layer.empty()) {
    std::vector<SubgroupSet> next;
    for (const SubgroupSet& h : layer) {
      for (size_t gi = 0; gi < g.size(); ++gi) {
        const int32_t x = static_cast<int32_t>(gi);
        if (h.contains(x)) continue;
        if (!h.contains(g.pow_u64(x, p))) continue;
        bool normalizes = true;
        for (int32_t s : h.gens_or_members()) {
          if (!h.contains(g.conj(s, x))) {
            normalizes = false;
            break;
          }
        }
        if (!normalizes) continue;
        std::vector<int32_t> seeds = h.gens_or_members();
        seeds.push_back(x);
        SubgroupSet k = subgroup_generated(g, seeds);
        if (seen.contains(k.members)) continue;
        require(out.size() < count_budget, errc::budget_exceeded,
                "subgroup count exceeds the enumeration budget");
        seen.insert(k.members);
        out.push_back(k);
        next.push_back(std::move(k));
      }
    }
    layer.swap(next);
  }
  std::sort(out.begin(), out.end(), [](const SubgroupSet& a, const SubgroupSet& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

int special_rank(const GroupTable& g, size_t order_budget) {
  std::vector<SubgroupSet> subs = all_subgroups(g, order_budget);
  int best = 0;
  for (const SubgroupSet& h : subs) best = std::max(best, min_generators_of(g, h));
  return best;
}

int32_t iterated_commutator(const GroupTable& g, int32_t a, std::span<const int32_t> bs) {
  int32_t cur = a;
  for (int32_t b : bs) cur = g.comm(cur, b);
  return cur;
}

GroupInvariants compute_invariants(const GroupTable& g, size_t sr_budget) {
  GroupInvariants inv;
  inv.order_exp = g.order_exp();
  inv.d = min_generators(g);
  inv.e = exponent_exp(g);
  inv.cl = lower_central_series(g).cl;
  inv.dl = derived_series(g).dl;
  inv.center_exp = upper_central_series(g).center_exp;
  if (g.size() <= sr_budget) inv.sr = special_rank(g, sr_budget);
  inv.powerful = is_powerful(g);
  return inv;
}

StructureReport verify_powerful_structure(const GroupTable& g) {
  require(is_powerful(g), errc::not_powerful, "group is not powerful");
  StructureReport rep;
  auto add = [&rep](std::string name, bool pass, std::string detail = "") {
    rep.clauses.push_back({std::move(name), pass, std::move(detail)});
  };

  const int e = exponent_exp(g);
  LowerCentralSeries lcs = lower_central_series(g);

  std::vector<SubgroupSet> agemos;
  for (int i = 0; i <= e; ++i) agemos.push_back(agemo(g, static_cast<unsigned>(i)));
  SubgroupSet phi = frattini(g);

  // powerfully embedded series terms
  {
    bool ok = true;
    std::string detail;
    for (size_t i = 0; i < lcs.terms.size() && ok; ++i)
      if (!is_powerfully_embedded(g, lcs.terms[i])) {
        ok = false;
        detail = "gamma_" + std::to_string(i + 1);
      }
    for (size_t i = 0; i < agemos.size() && ok; ++i)
      if (!is_powerfully_embedded(g, agemos[i])) {
        ok = false;
        detail = "agemo_" + std::to_string(i);
      }
    if (ok && !is_powerfully_embedded(g, phi)) {
      ok = false;
      detail = "frattini";
    }
    add("powerfully_embedded_terms", ok, detail);
  }

  // p-series equals the agemo series
  {
    bool ok = true;
    std::string detail;
    std::vector<SubgroupSet> ps = p_series(g);
    for (int i = 0; i <= e; ++i) {
      const SubgroupSet& pterm =
          static_cast<size_t>(i) < ps.size() ? ps[static_cast<size_t>(i)] : ps.back();
      if (!subgroup_equal(pterm, agemos[static_cast<size_t>(i)])) {
        ok = false;
        detail = "P_" + std::to_string(i + 1) + " != agemo_" + std::to_string(i);
        break;
      }
    }
    add("p_series_equals_agemo", ok, detail);
  }

  // agemo composition
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= e && ok; ++i) {
      for (int j = 0; i + j <= e && ok; ++j) {
        SubgroupSet lhs = agemo_of(g, agemos[static_cast<size_t>(j)], static_cast<unsigned>(i));
        if (!subgroup_equal(lhs, agemos[static_cast<size_t>(i + j)])) {
          ok = false;
          detail = "agemo_" + std::to_string(i) + "(agemo_" + std::to_string(j) + ")";
        }
      }
    }
    add("agemo_composition", ok, detail);
  }

  // agemo_i is exactly the set of p^i-th powers
  {
    bool ok = true;
    std::string detail;
    SubgroupSet full = full_subgroup(g);
    for (int i = 0; i <= e && ok; ++i) {
      std::vector<int32_t> powers =
          kernels::power_map(g, full.members, p_power(g.p(), static_cast<unsigned>(i)));
      std::sort(powers.begin(), powers.end());
      powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
      if (powers != agemos[static_cast<size_t>(i)].members) {
        ok = false;
        detail = "agemo_" + std::to_string(i);
      }
    }
    add("agemo_is_power_set", ok, detail);
  }

  // agemo_i is generated by the p^i-th powers of the generators
  {
    bool ok = true;
    std::string detail;
    for (int i = 0; i <= e && ok; ++i) {
      std::vector<int32_t> seeds;
      for (int32_t a : g.generators)
        seeds.push_back(g.pow_u64(a, p_power(g.p(), static_cast<unsigned>(i))));
      SubgroupSet s = subgroup_generated(g, seeds);
      if (!subgroup_equal(s, agemos[static_cast<size_t>(i)])) {
        ok = false;
        detail = "agemo_" + std::to_string(i);
      }
    }
    add("agemo_generated_by_generator_powers", ok, detail);
  }

  // subgroup rank bound d(H) <= d(G) over the computed series terms
  {
    bool ok = true;
    std::string detail;
    const int dg = min_generators(g);
    std::set<std::vector<int32_t>> distinct;
    std::vector<const SubgroupSet*> pool;
    for (const auto& t : lcs.terms) pool.push_back(&t);
    for (const auto& t : agemos) pool.push_back(&t);
    pool.push_back(&phi);
    DerivedSeries ds = derived_series(g);
    for (const auto& t : ds.terms) pool.push_back(&t);
    for (const SubgroupSet* h : pool) {
      if (!distinct.insert(h->members).second) continue;
      if (min_generators_of(g, *h) > dg) {
        ok = false;
        detail = "a series subgroup needs more generators than G";
        break;
      }
    }
    add("series_subgroup_rank_bound", ok, detail);
  }

  rep.all_pass = std::all_of(rep.clauses.begin(), rep.clauses.end(),
                             [](const ClauseReport& c) { return c.pass; });
  return rep;
}

OmegaGammaReport compare_omega_gamma(const GroupTable& g, int c, unsigned k) {
  require(c >= 0, errc::invalid_argument, "need c >= 0");
  LowerCentralSeries lcs = lower_central_series(g);
  const SubgroupSet& gamma =
      static_cast<size_t>(c) < lcs.terms.size() ? lcs.terms[static_cast<size_t>(c)] : lcs.terms.back();
  SubgroupSet lhs = agemo_of(g, gamma, k);

  SubgroupSet rhs = agemo(g, k);
  for (int i = 0; i < c; ++i) rhs = commutator_subgroup(g, rhs, full_subgroup(g));

  OmegaGammaReport rep;
  rep.lhs_size = lhs.size();
  rep.rhs_size = rhs.size();
  const bool l_in_r = subgroup_subset(lhs, rhs);
  const bool r_in_l = subgroup_subset(rhs, lhs);
  if (l_in_r && r_in_l)
    rep.relation = SetRelation::equal;
  else if (l_in_r)
    rep.relation = SetRelation::left_in_right;
  else if (r_in_l)
    rep.relation = SetRelation::right_in_left;
  else
    rep.relation = SetRelation::incomparable;
  return rep;
}

}  // namespace pgw
