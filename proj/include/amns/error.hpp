#pragma once

#include <stdexcept>
#include <string>

namespace amns {

enum class Errc {
  precondition,
  gamma_unavailable,
  infeasible_bounds,
  invariant_failure,
  contract,
  unsupported,
  search_bound,
  parse,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace amns
