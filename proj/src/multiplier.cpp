#include "pgw/multiplier.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "pgw/residue.hpp"

namespace pgw {

AbelianPGroup AbelianPGroup::make(uint64_t p, std::vector<int> alphas) {
  require(is_prime_u64(p), errc::invalid_parameters, "p must be prime");
  for (int a : alphas)
    require(a >= 1, errc::invalid_parameters, "invariant factors must be >= 1");
  std::sort(alphas.begin(), alphas.end(), std::greater<int>());
  return AbelianPGroup{p, std::move(alphas)};
}

long long AbelianPGroup::order_exp() const {
  long long s = 0;
  for (int a : alphas) s += a;
  return s;
}

AbelianPGroup abelian_multiplier(const AbelianPGroup& g, int c) {
  require(c >= 1, errc::invalid_parameters, "need c >= 1");
  std::vector<int> out;
  long long prev_b = 0;  // b_1 = chi_{c+1}(1) = 0
  for (int i = 2; i <= g.d(); ++i) {
    const long long b = witt_chi_ll(static_cast<uint64_t>(i), static_cast<uint64_t>(c) + 1);
    for (long long r = 0; r < b - prev_b; ++r) out.push_back(g.alphas[static_cast<size_t>(i) - 1]);
    prev_b = b;
  }
  return AbelianPGroup::make(g.p, std::move(out));
}

AbelianPGroup pst_multiplier(uint64_t p, int d, int s, int t, int c) {
  require(p % 2 == 1 && is_prime_u64(p), errc::invalid_parameters, "p must be an odd prime");
  require(d >= 2, errc::invalid_parameters, "need d >= 2");
  require(s >= t && t >= 1, errc::invalid_parameters, "need s >= t >= 1");
  require(c >= 1, errc::invalid_parameters, "need c >= 1");
  std::vector<int> out;
  const long long n1 = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 1);
  const long long n2 = witt_chi_ll(static_cast<uint64_t>(d), static_cast<uint64_t>(c) + 2);
  for (long long r = 0; r < n1; ++r) out.push_back(s);
  for (long long r = 0; r < n2; ++r) out.push_back(t);
  return AbelianPGroup::make(p, std::move(out));
}

StructureInvariants structure_invariants(const AbelianPGroup& m) {
  return StructureInvariants{m.order_exp(), m.d(), m.exponent_exp()};
}

Catalog Catalog::builtin() {
  Catalog c;
  c.entries_.push_back({"sd16", 2, AbelianPGroup::make(2, {1, 1}),
                        "published multiplier table for groups of order <= 30, entry 13"});
  c.entries_.push_back({"mod27", 2, AbelianPGroup::make(3, {1, 1}),
                        "published multiplier table for groups of order <= 30, entry 40"});
  return c;
}

Catalog Catalog::load_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::invalid_parameters, "cannot open catalog file: " + path);
  nlohmann::json j;
  in >> j;
  require(j.is_array(), errc::invalid_parameters, "catalog file must hold a JSON array");
  Catalog c = builtin();
  for (const auto& entry : j) {
    CatalogEntry e;
    e.family_key = entry.at("family_key").get<std::string>();
    e.c = entry.at("c").get<int>();
    e.multiplier = AbelianPGroup::make(entry.at("p").get<uint64_t>(),
                                       entry.at("alphas").get<std::vector<int>>());
    e.source = entry.value("source", std::string{});
    // file entries override builtin ones with the same key
    std::erase_if(c.entries_, [&e](const CatalogEntry& have) {
      return have.family_key == e.family_key && have.c == e.c;
    });
    c.entries_.push_back(std::move(e));
  }
  return c;
}

const CatalogEntry& Catalog::lookup(const std::string& family_key, int c) const {
  for (const auto& e : entries_)
    if (e.family_key == family_key && e.c == c) return e;
  fail(errc::not_in_catalog, "no catalog entry for (" + family_key + ", c=" + std::to_string(c) + ")");
}

std::optional<CatalogEntry> Catalog::find(const std::string& family_key, int c) const {
  for (const auto& e : entries_)
    if (e.family_key == family_key && e.c == c) return e;
  return std::nullopt;
}

}  // namespace pgw
