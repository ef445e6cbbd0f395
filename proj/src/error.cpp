#include "amns/error.hpp"

namespace amns {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::precondition: return "precondition";
    case Errc::gamma_unavailable: return "gamma-unavailable";
    case Errc::infeasible_bounds: return "infeasible-bounds";
    case Errc::invariant_failure: return "invariant-failure";
    case Errc::contract: return "contract";
    case Errc::unsupported: return "unsupported";
    case Errc::search_bound: return "search-bound";
    case Errc::parse: return "parse";
  }
  return "unknown";
}

}  // namespace amns
