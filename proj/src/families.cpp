#include "pgw/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pgw/witt.hpp"

namespace pgw {

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::abelian: return "abelian";
    case FamilyKind::lm_example: return "lm_example";
    case FamilyKind::sd16: return "sd16";
    case FamilyKind::mod27: return "mod27";
    case FamilyKind::pst: return "pst";
    case FamilyKind::custom_matrix: return "custom_matrix";
  }
  return "?";
}

FamilyKind family_kind_from(const std::string& name) {
  for (FamilyKind k : {FamilyKind::abelian, FamilyKind::lm_example, FamilyKind::sd16,
                       FamilyKind::mod27, FamilyKind::pst, FamilyKind::custom_matrix})
    if (name == to_string(k)) return k;
  fail(errc::invalid_parameters, "unknown family kind: " + name);
}

FamilySpec FamilySpec::make_abelian(uint64_t p, std::vector<int> alphas) {
  require(is_prime_u64(p), errc::invalid_parameters, "p must be prime");
  require(!alphas.empty(), errc::invalid_parameters, "need at least one invariant factor");
  for (int a : alphas) require(a >= 1, errc::invalid_parameters, "invariant factors must be >= 1");
  std::sort(alphas.begin(), alphas.end(), std::greater<int>());
  FamilySpec s;
  s.kind = FamilyKind::abelian;
  s.p = p;
  s.alphas = std::move(alphas);
  return s;
}

FamilySpec FamilySpec::make_lm_example(uint64_t p, int l) {
  require(is_prime_u64(p) && p % 2 == 1, errc::invalid_parameters,
          "this family needs an odd prime (1-p must have order p^(l+1))");
  require(l >= 1, errc::invalid_parameters, "need l >= 1");
  FamilySpec s;
  s.kind = FamilyKind::lm_example;
  s.p = p;
  s.l = l;
  return s;
}

FamilySpec FamilySpec::make_sd16() {
  FamilySpec s;
  s.kind = FamilyKind::sd16;
  s.p = 2;
  return s;
}

FamilySpec FamilySpec::make_mod27() {
  FamilySpec s;
  s.kind = FamilyKind::mod27;
  s.p = 3;
  return s;
}

FamilySpec FamilySpec::make_pst(uint64_t p, int d, int s, int t) {
  require(is_prime_u64(p) && p % 2 == 1, errc::invalid_parameters, "p must be an odd prime");
  require(d >= 2, errc::invalid_parameters, "need d >= 2");
  require(s >= t && t >= 1, errc::invalid_parameters, "need s >= t >= 1");
  FamilySpec out;
  out.kind = FamilyKind::pst;
  out.p = p;
  out.d = d;
  out.s = s;
  out.t = t;
  return out;
}

FamilySpec FamilySpec::make_custom(uint64_t modulus,
                                   std::vector<std::vector<std::vector<long long>>> gens) {
  require(!gens.empty(), errc::invalid_parameters, "need at least one generator");
  FamilySpec s;
  s.kind = FamilyKind::custom_matrix;
  s.modulus = modulus;
  s.generator_rows = std::move(gens);
  return s;
}

std::string FamilySpec::id() const {
  std::ostringstream os;
  switch (kind) {
    case FamilyKind::abelian: {
      os << "abelian(p=" << p << ",alphas=[";
      for (size_t i = 0; i < alphas.size(); ++i) os << (i ? "," : "") << alphas[i];
      os << "])";
      break;
    }
    case FamilyKind::lm_example: os << "lm_example(p=" << p << ",l=" << l << ")"; break;
    case FamilyKind::sd16: os << "sd16"; break;
    case FamilyKind::mod27: os << "mod27"; break;
    case FamilyKind::pst: os << "pst(p=" << p << ",d=" << d << ",s=" << s << ",t=" << t << ")"; break;
    case FamilyKind::custom_matrix:
      os << "custom_matrix(modulus=" << modulus << ",gens=" << generator_rows.size() << ")";
      break;
  }
  return os.str();
}

namespace {

void validate(BuiltFamily& fam, bool ok, const std::string& name) {
  require(ok, errc::internal, fam.spec.id() + ": realization check failed: " + name);
  fam.validations.push_back(name);
}

void fill_engine_invariants(BuiltFamily& fam) {
  const GroupTable& g = *fam.table;
  fam.inv = compute_invariants(g);
  LowerCentralSeries lcs = lower_central_series(g);
  for (const auto& term : lcs.terms) {
    size_t sz = term.size();
    long long k = 0;
    while (sz % g.p() == 0) {
      sz /= g.p();
      ++k;
    }
    fam.gamma_order_exps.push_back(k);
  }
}

uint64_t pow_u64_checked(uint64_t p, unsigned k) {
  unsigned __int128 m = 1;
  for (unsigned i = 0; i < k; ++i) {
    m *= p;
    require(m < (static_cast<unsigned __int128>(1) << 32), errc::invalid_parameters,
            "required modulus exceeds 2^32");
  }
  return static_cast<uint64_t>(m);
}

BuiltFamily build_abelian(const FamilySpec& spec) {
  BuiltFamily fam;
  fam.spec = spec;
  const int d = static_cast<int>(spec.alphas.size());
  const int a1 = spec.alphas[0];
  long long order_exp = 0;
  for (int a : spec.alphas) order_exp += a;

  // invariant snapshot is symbolic: the realization below only exists to
  // drive element-level checks on small instances
  fam.inv.order_exp = static_cast<int>(order_exp);
  fam.inv.d = d;
  fam.inv.e = a1;
  fam.inv.cl = 1;
  fam.inv.dl = 1;
  fam.inv.center_exp = a1;
  fam.inv.sr = d;
  fam.inv.powerful = true;
  fam.gamma_order_exps = {order_exp};

  // realize as diagonal matrices when the engine can enumerate the group:
  // units mod p^(a1+1) (p odd) or mod 2^(a1+2) carry a cyclic p-part of
  // order p^a1, so entry i can have exact order p^(alpha_i)
  double log_order = static_cast<double>(order_exp) * std::log2(static_cast<double>(spec.p));
  if (d <= 4 && log_order <= 12.0) {
    const unsigned mk = static_cast<unsigned>(a1) + (spec.p == 2 ? 2u : 1u);
    const uint64_t m = pow_u64_checked(spec.p, mk);
    const ResidueModulus mod = ResidueModulus::make(spec.p, mk);
    const uint64_t base = spec.p == 2 ? 5 : 1 + spec.p;
    std::vector<ResidueMatrix> gens;
    for (int i = 0; i < d; ++i) {
      ResidueMatrix g = ResidueMatrix::identity(mod, d);
      uint64_t exp = 1;
      for (int j = 0; j < a1 - spec.alphas[static_cast<size_t>(i)]; ++j) exp *= spec.p;
      uint64_t entry = 1;
      for (uint64_t j = 0; j < exp; ++j) entry = entry * base % m;
      g.set(i, i, static_cast<long long>(entry));
      gens.push_back(std::move(g));
    }
    fam.table = close(gens, size_t{1} << 13);
    const GroupTable& g = *fam.table;
    bool orders_ok = true;
    for (int i = 0; i < d; ++i) {
      uint64_t want = 1;
      for (int j = 0; j < spec.alphas[static_cast<size_t>(i)]; ++j) want *= spec.p;
      if (element_order(gens[static_cast<size_t>(i)], want + 1) != want) orders_ok = false;
    }
    validate(fam, orders_ok, "generator_orders");
    uint64_t want_order = 1;
    for (long long j = 0; j < order_exp; ++j) want_order *= spec.p;
    validate(fam, g.size() == want_order, "group_order");
    bool commute = true;
    for (int32_t x : g.generators)
      for (int32_t y : g.generators)
        if (g.comm(x, y) != g.identity) commute = false;
    validate(fam, commute, "generators_commute");
  }
  return fam;
}

BuiltFamily build_lm_example(const FamilySpec& spec, size_t closure_cap) {
  BuiltFamily fam;
  fam.spec = spec;
  const uint64_t p = spec.p;
  const int l = spec.l;
  const ResidueModulus mod = ResidueModulus::make(p, static_cast<unsigned>(l) + 2);
  const uint64_t m = mod.m;

  const uint64_t one_minus_p = mod_reduce(1 - static_cast<long long>(p), m);
  const uint64_t inv_1mp = mod_inverse(one_minus_p, m);
  ResidueMatrix X = ResidueMatrix::from_rows(mod, {{1, 0}, {0, static_cast<long long>(one_minus_p)}});
  ResidueMatrix Y = ResidueMatrix::from_rows(
      mod, {{static_cast<long long>(inv_1mp),
             static_cast<long long>(p * inv_1mp % m)},
            {0, 1}});
  ResidueMatrix Z = ResidueMatrix::from_rows(mod, {{1, static_cast<long long>(p)}, {0, 1}});

  fam.table = close({X, Y, Z}, closure_cap);
  const GroupTable& g = *fam.table;
  const int32_t xi = g.lookup(X), yi = g.lookup(Y), zi = g.lookup(Z);

  // [X,Y] = [X,Z] = [Y,Z] = Z^p
  const int32_t zp = g.pow_u64(zi, p);
  validate(fam, g.comm(xi, yi) == zp && g.comm(xi, zi) == zp && g.comm(yi, zi) == zp,
           "generator_commutators_equal_zp");

  // generator orders: X^(p^(l+1)) = Y^(p^(l+1)) = Z^(p^(l+1)) = 1
  uint64_t pl1 = 1;
  for (int j = 0; j <= l; ++j) pl1 *= p;
  validate(fam,
           g.pow_u64(xi, pl1) == g.identity && g.pow_u64(yi, pl1) == g.identity &&
               g.pow_u64(zi, pl1) == g.identity,
           "generator_orders_divide_p_l_plus_1");

  // iterated commutators [Z^p, X, ..., X]: value (-1)^(k+2) p^(k+2) in the
  // corner for k < l, identity exactly from k = l on
  {
    bool ok = true;
    int32_t cur = zp;
    for (int k = 1; k <= l + 1; ++k) {
      cur = g.comm(cur, xi);
      if (k >= l) {
        if (cur != g.identity) ok = false;
        continue;
      }
      long long corner = 1;
      for (int j = 0; j < k + 2; ++j) corner *= static_cast<long long>(p);
      if (k % 2 == 1) corner = -corner;  // (-1)^(k+2)
      ResidueMatrix want = ResidueMatrix::from_rows(mod, {{1, corner}, {0, 1}});
      if (cur == g.identity || g.lookup(want) != cur) ok = false;
    }
    validate(fam, ok, "iterated_commutator_matrix_law");
  }

  // order p^(3(l+1))
  {
    uint64_t want = 1;
    for (int j = 0; j < 3 * (l + 1); ++j) want *= p;
    validate(fam, g.size() == want, "group_order");
  }

  // X^a Y^b Z^c normal form hits every element exactly once and matches the
  // closed-form matrix
  {
    std::vector<uint8_t> seen(g.size(), 0);
    bool ok = true;
    int32_t xa = g.identity;
    for (uint64_t a = 0; a < pl1 && ok; ++a) {
      int32_t xayb = xa;
      for (uint64_t b = 0; b < pl1 && ok; ++b) {
        int32_t cur = xayb;
        uint64_t pow_1mp_b = 1;
        for (uint64_t j = 0; j < b; ++j) pow_1mp_b = pow_1mp_b * one_minus_p % m;
        const uint64_t inv_pow_b = mod_inverse(pow_1mp_b, m);
        uint64_t pow_1mp_a = 1;
        for (uint64_t j = 0; j < a; ++j) pow_1mp_a = pow_1mp_a * one_minus_p % m;
        for (uint64_t c = 0; c < pl1 && ok; ++c) {
          if (seen[static_cast<size_t>(cur)]) {
            ok = false;
            break;
          }
          seen[static_cast<size_t>(cur)] = 1;
          const uint64_t top_right = (1 + p * c % m + m - pow_1mp_b) % m * inv_pow_b % m;
          ResidueMatrix want = ResidueMatrix::from_rows(
              mod, {{static_cast<long long>(inv_pow_b), static_cast<long long>(top_right)},
                    {0, static_cast<long long>(pow_1mp_a)}});
          if (g.lookup(want) != cur) ok = false;
          cur = g.mult(cur, zi);
        }
        xayb = g.mult(xayb, yi);
      }
      xa = g.mult(xa, xi);
    }
    ok = ok && std::all_of(seen.begin(), seen.end(), [](uint8_t v) { return v == 1; });
    validate(fam, ok, "normal_form_bijection");
  }

  fill_engine_invariants(fam);
  return fam;
}

BuiltFamily build_sd16(const FamilySpec& spec, size_t closure_cap) {
  BuiltFamily fam;
  fam.spec = spec;
  const ResidueModulus mod = ResidueModulus::make(2, 3);
  ResidueMatrix a = ResidueMatrix::from_rows(mod, {{5, 0}, {0, 1}});
  ResidueMatrix b = ResidueMatrix::from_rows(mod, {{1, 1}, {0, 1}});
  // presentation checks before the closure is trusted: a^2 = 1, aba = b^-3
  validate(fam, mat_pow(a, 2).is_identity(), "a_squared_is_identity");
  validate(fam, mat_mul(mat_mul(a, b), a) == mat_pow(b, -3), "aba_equals_b_minus_3");
  fam.table = close({a, b}, closure_cap);
  validate(fam, fam.table->size() == 16, "group_order");
  fill_engine_invariants(fam);
  return fam;
}

BuiltFamily build_mod27(const FamilySpec& spec, size_t closure_cap) {
  BuiltFamily fam;
  fam.spec = spec;
  const ResidueModulus mod = ResidueModulus::make(3, 2);
  ResidueMatrix a = ResidueMatrix::from_rows(mod, {{4, 0}, {0, 1}});
  ResidueMatrix b = ResidueMatrix::from_rows(mod, {{1, 1}, {0, 1}});
  validate(fam, mat_pow(a, 3).is_identity(), "a_cubed_is_identity");
  validate(fam, mat_mul(mat_mul(mat_inv(a), b), a) == mat_pow(b, -2), "a_inv_b_a_equals_b_minus_2");
  fam.table = close({a, b}, closure_cap);
  validate(fam, fam.table->size() == 27, "group_order");
  fill_engine_invariants(fam);
  return fam;
}

BuiltFamily build_pst(const FamilySpec& spec) {
  BuiltFamily fam;
  fam.spec = spec;
  const long long pairs = static_cast<long long>(spec.d) * (spec.d - 1) / 2;
  const long long derived_exp = static_cast<long long>(spec.t) * pairs;
  const long long order_exp = static_cast<long long>(spec.d) * spec.s + derived_exp;
  fam.inv.order_exp = static_cast<int>(order_exp);
  fam.inv.d = spec.d;
  fam.inv.e = spec.s;
  fam.inv.cl = 2;
  fam.inv.dl = 2;
  fam.inv.center_exp = std::nullopt;  // not derived here
  fam.inv.sr = std::nullopt;
  fam.inv.powerful = false;  // stated for the family; not engine-verified
  fam.gamma_order_exps = {order_exp, derived_exp};
  return fam;
}

BuiltFamily build_custom(const FamilySpec& spec, size_t closure_cap) {
  BuiltFamily fam;
  fam.spec = spec;
  uint64_t m = spec.modulus;
  require(m >= 2, errc::invalid_parameters, "modulus must be >= 2");
  uint64_t p = 0;
  for (uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = m;
  unsigned k = 0;
  uint64_t rest = m;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  require(rest == 1, errc::invalid_parameters, "modulus must be a prime power");
  const ResidueModulus mod = ResidueModulus::make(p, k);
  std::vector<ResidueMatrix> gens;
  for (const auto& rows : spec.generator_rows) gens.push_back(ResidueMatrix::from_rows(mod, rows));
  fam.table = close(gens, closure_cap);
  fill_engine_invariants(fam);
  return fam;
}

}  // namespace

std::optional<long long> BuiltFamily::derived_order_exp() const {
  if (gamma_order_exps.size() >= 2) return gamma_order_exps[1];
  if (!gamma_order_exps.empty()) return 0;  // series stopped at gamma_1 = trivial group
  return std::nullopt;
}

BuiltFamily build_family(const FamilySpec& spec, size_t closure_cap) {
  switch (spec.kind) {
    case FamilyKind::abelian: return build_abelian(spec);
    case FamilyKind::lm_example: return build_lm_example(spec, closure_cap);
    case FamilyKind::sd16: return build_sd16(spec, closure_cap);
    case FamilyKind::mod27: return build_mod27(spec, closure_cap);
    case FamilyKind::pst: return build_pst(spec);
    case FamilyKind::custom_matrix: return build_custom(spec, closure_cap);
  }
  fail(errc::invalid_parameters, "unknown family kind");
}

GroupTable dihedral8() {
  const ResidueModulus mod = ResidueModulus::make(2, 2);
  ResidueMatrix r = ResidueMatrix::from_rows(mod, {{0, -1}, {1, 0}});
  ResidueMatrix s = ResidueMatrix::from_rows(mod, {{1, 0}, {0, -1}});
  require(mat_pow(r, 4).is_identity() && mat_pow(s, 2).is_identity() &&
              mat_mul(mat_mul(s, r), s) == mat_pow(r, -1),
          errc::internal, "dihedral realization checks failed");
  GroupTable g = close({r, s}, 64);
  require(g.size() == 8, errc::internal, "dihedral order check failed");
  return g;
}

FamilySpec load_custom_spec(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::invalid_parameters, "cannot open generator file: " + path);
  nlohmann::json j;
  in >> j;
  return FamilySpec::make_custom(
      j.at("modulus").get<uint64_t>(),
      j.at("generators").get<std::vector<std::vector<std::vector<long long>>>>());
}

}  // namespace pgw
