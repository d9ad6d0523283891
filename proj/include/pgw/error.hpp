#pragma once

#include <stdexcept>
#include <string>

namespace pgw {

enum class errc {
  invalid_argument,
  invalid_parameters,
  non_unit,
  order_cap_exceeded,
  closure_cap_exceeded,
  pair_budget_exceeded,
  not_normal,
  not_powerful,
  not_nilpotent,
  not_p_group,
  budget_exceeded,
  basis_too_large,
  collection_budget_exceeded,
  insufficient_samples,
  not_in_catalog,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pgw
