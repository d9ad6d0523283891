#include "pgw/kernels.hpp"

#include <algorithm>

#include "pgw/config.hpp"

#if defined(PGW_HAVE_OPENMP)
#include <omp.h>
#endif

namespace pgw::kernels {

namespace {

int32_t element_power(const GroupTable& g, int32_t a, uint64_t e) {
  int32_t r = g.identity;
  int32_t base = a;
  while (e > 0) {
    if (e & 1) r = g.mult(r, base);
    base = g.mult(base, base);
    e >>= 1;
  }
  return r;
}

int order_exp_of(const GroupTable& g, int32_t a) {
  // order of a divides p^n in a p-group: count p-th powerings to identity
  const uint64_t p = g.p();
  int32_t cur = a;
  int j = 0;
  while (cur != g.identity) {
    cur = element_power(g, cur, p);
    ++j;
    require(j <= 64, errc::not_p_group, "element order is not a power of p");
  }
  return j;
}

bool sorted_contains(const std::vector<int32_t>& v, int32_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

std::vector<int32_t> power_map_serial(const GroupTable& g, std::span<const int32_t> members,
                                      uint64_t e) {
  std::vector<int32_t> out(members.size());
  for (size_t i = 0; i < members.size(); ++i) out[i] = element_power(g, members[i], e);
  return out;
}

std::vector<int32_t> power_map_parallel(const GroupTable& g, std::span<const int32_t> members,
                                        uint64_t e) {
  std::vector<int32_t> out(members.size());
  const long n = static_cast<long>(members.size());
#if defined(PGW_HAVE_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads())
#endif
  for (long i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = element_power(g, members[static_cast<size_t>(i)], e);
  return out;
}

std::vector<int32_t> power_map(const GroupTable& g, std::span<const int32_t> members, uint64_t e) {
  return parallel_enabled() ? power_map_parallel(g, members, e) : power_map_serial(g, members, e);
}

std::vector<int> order_exp_scan_serial(const GroupTable& g, std::span<const int32_t> members) {
  std::vector<int> out(members.size());
  for (size_t i = 0; i < members.size(); ++i) out[i] = order_exp_of(g, members[i]);
  return out;
}

std::vector<int> order_exp_scan_parallel(const GroupTable& g, std::span<const int32_t> members) {
  std::vector<int> out(members.size());
  const long n = static_cast<long>(members.size());
#if defined(PGW_HAVE_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads())
#endif
  for (long i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = order_exp_of(g, members[static_cast<size_t>(i)]);
  return out;
}

std::vector<int> order_exp_scan(const GroupTable& g, std::span<const int32_t> members) {
  return parallel_enabled() ? order_exp_scan_parallel(g, members)
                            : order_exp_scan_serial(g, members);
}

std::vector<int32_t> pair_commutators_serial(const GroupTable& g, std::span<const int32_t> a,
                                             std::span<const int32_t> b) {
  std::vector<uint8_t> seen(g.size(), 0);
  for (int32_t x : a)
    for (int32_t y : b) seen[static_cast<size_t>(g.comm(x, y))] = 1;
  std::vector<int32_t> out;
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int32_t>(i));
  return out;
}

std::vector<int32_t> pair_commutators_parallel(const GroupTable& g, std::span<const int32_t> a,
                                               std::span<const int32_t> b) {
  std::vector<uint8_t> seen(g.size(), 0);
  const long n = static_cast<long>(a.size());
#if defined(PGW_HAVE_OPENMP)
#pragma omp parallel num_threads(threads())
  {
    std::vector<uint8_t> local(g.size(), 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (long i = 0; i < n; ++i) {
      const int32_t x = a[static_cast<size_t>(i)];
      for (int32_t y : b) local[static_cast<size_t>(g.comm(x, y))] = 1;
    }
#pragma omp critical
    {
      for (size_t i = 0; i < seen.size(); ++i) seen[i] |= local[i];
    }
  }
#else
  for (long i = 0; i < n; ++i) {
    const int32_t x = a[static_cast<size_t>(i)];
    for (int32_t y : b) seen[static_cast<size_t>(g.comm(x, y))] = 1;
  }
#endif
  std::vector<int32_t> out;
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<int32_t>(i));
  return out;
}

std::vector<int32_t> pair_commutators(const GroupTable& g, std::span<const int32_t> a,
                                      std::span<const int32_t> b) {
  return parallel_enabled() ? pair_commutators_parallel(g, a, b)
                            : pair_commutators_serial(g, a, b);
}

std::vector<uint8_t> central_step_serial(const GroupTable& g, std::span<const int32_t> candidates,
                                         std::span<const int32_t> tests,
                                         const std::vector<int32_t>& target) {
  std::vector<uint8_t> mask(candidates.size(), 0);
  for (size_t i = 0; i < candidates.size(); ++i) {
    bool ok = true;
    for (int32_t t : tests) {
      if (!sorted_contains(target, g.comm(candidates[i], t))) {
        ok = false;
        break;
      }
    }
    mask[i] = ok ? 1 : 0;
  }
  return mask;
}

std::vector<uint8_t> central_step_parallel(const GroupTable& g, std::span<const int32_t> candidates,
                                           std::span<const int32_t> tests,
                                           const std::vector<int32_t>& target) {
  std::vector<uint8_t> mask(candidates.size(), 0);
  const long n = static_cast<long>(candidates.size());
#if defined(PGW_HAVE_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads())
#endif
  for (long i = 0; i < n; ++i) {
    bool ok = true;
    for (int32_t t : tests) {
      if (!sorted_contains(target, g.comm(candidates[static_cast<size_t>(i)], t))) {
        ok = false;
        break;
      }
    }
    mask[static_cast<size_t>(i)] = ok ? 1 : 0;
  }
  return mask;
}

std::vector<uint8_t> central_step(const GroupTable& g, std::span<const int32_t> candidates,
                                  std::span<const int32_t> tests,
                                  const std::vector<int32_t>& target) {
  return parallel_enabled() ? central_step_parallel(g, candidates, tests, target)
                            : central_step_serial(g, candidates, tests, target);
}

std::vector<uint16_t> mult_table_serial(const GroupTable& g) {
  require(g.size() <= GroupTable::kTableCacheLimit, errc::invalid_argument,
          "group too large for a cached table");
  const size_t n = g.size();
  std::vector<uint16_t> t(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const ResidueMatrix prod = mat_mul(g.elements[i], g.elements[j]);
      t[i * n + j] = static_cast<uint16_t>(g.lookup(prod));
    }
  }
  return t;
}

std::vector<uint16_t> mult_table_parallel(const GroupTable& g) {
  require(g.size() <= GroupTable::kTableCacheLimit, errc::invalid_argument,
          "group too large for a cached table");
  const size_t n = g.size();
  std::vector<uint16_t> t(n * n);
  const long ln = static_cast<long>(n);
#if defined(PGW_HAVE_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads())
#endif
  for (long i = 0; i < ln; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const ResidueMatrix prod = mat_mul(g.elements[static_cast<size_t>(i)], g.elements[j]);
      t[static_cast<size_t>(i) * n + j] = static_cast<uint16_t>(g.lookup(prod));
    }
  }
  return t;
}

std::vector<uint16_t> mult_table(const GroupTable& g) {
  return parallel_enabled() ? mult_table_parallel(g) : mult_table_serial(g);
}

std::vector<int32_t> inverse_scan_serial(const GroupTable& g) {
  std::vector<int32_t> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = g.lookup(mat_inv(g.elements[i]));
  return out;
}

std::vector<int32_t> inverse_scan_parallel(const GroupTable& g) {
  std::vector<int32_t> out(g.size());
  const long n = static_cast<long>(g.size());
#if defined(PGW_HAVE_OPENMP)
#pragma omp parallel for schedule(static) num_threads(threads())
#endif
  for (long i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = g.lookup(mat_inv(g.elements[static_cast<size_t>(i)]));
  return out;
}

std::vector<int32_t> inverse_scan(const GroupTable& g) {
  return parallel_enabled() ? inverse_scan_parallel(g) : inverse_scan_serial(g);
}

}  // namespace pgw::kernels
