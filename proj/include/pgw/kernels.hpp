#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pgw/group.hpp"

// Data-parallel element scans over an immutable GroupTable. Every kernel
// has a serial reference implementation and an OpenMP one; the unsuffixed
// entry point dispatches on the configured thread count. Outputs are
// slot-indexed or sorted, so both paths produce identical results.
namespace pgw::kernels {

// members[i] ^ e
std::vector<int32_t> power_map_serial(const GroupTable& g, std::span<const int32_t> members,
                                      uint64_t e);
std::vector<int32_t> power_map_parallel(const GroupTable& g, std::span<const int32_t> members,
                                        uint64_t e);
std::vector<int32_t> power_map(const GroupTable& g, std::span<const int32_t> members, uint64_t e);

// j with order(members[i]) = p^j
std::vector<int> order_exp_scan_serial(const GroupTable& g, std::span<const int32_t> members);
std::vector<int> order_exp_scan_parallel(const GroupTable& g, std::span<const int32_t> members);
std::vector<int> order_exp_scan(const GroupTable& g, std::span<const int32_t> members);

// sorted distinct [a,b] over the full A x B rectangle
std::vector<int32_t> pair_commutators_serial(const GroupTable& g, std::span<const int32_t> a,
                                             std::span<const int32_t> b);
std::vector<int32_t> pair_commutators_parallel(const GroupTable& g, std::span<const int32_t> a,
                                               std::span<const int32_t> b);
std::vector<int32_t> pair_commutators(const GroupTable& g, std::span<const int32_t> a,
                                      std::span<const int32_t> b);

// mask[i] = 1 iff [candidates[i], t] lies in `target` for every t in tests;
// target must be sorted
std::vector<uint8_t> central_step_serial(const GroupTable& g, std::span<const int32_t> candidates,
                                         std::span<const int32_t> tests,
                                         const std::vector<int32_t>& target);
std::vector<uint8_t> central_step_parallel(const GroupTable& g, std::span<const int32_t> candidates,
                                           std::span<const int32_t> tests,
                                           const std::vector<int32_t>& target);
std::vector<uint8_t> central_step(const GroupTable& g, std::span<const int32_t> candidates,
                                  std::span<const int32_t> tests,
                                  const std::vector<int32_t>& target);

// full multiplication table for |G| <= GroupTable::kTableCacheLimit
std::vector<uint16_t> mult_table_serial(const GroupTable& g);
std::vector<uint16_t> mult_table_parallel(const GroupTable& g);
std::vector<uint16_t> mult_table(const GroupTable& g);

// index of every element's inverse (matrix inversion + lookup)
std::vector<int32_t> inverse_scan_serial(const GroupTable& g);
std::vector<int32_t> inverse_scan_parallel(const GroupTable& g);
std::vector<int32_t> inverse_scan(const GroupTable& g);

}  // namespace pgw::kernels
