#include "hcons/error.hpp"

namespace hcons {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_child: return "invalid-child";
    case Errc::unknown_identifier: return "unknown-identifier";
    case Errc::usage: return "usage";
    case Errc::contract_violation: return "contract-violation";
    case Errc::depth_exceeded: return "depth-exceeded";
    case Errc::ill_ordered: return "ill-ordered";
    case Errc::unbound_variable: return "unbound-variable";
    case Errc::syntax: return "syntax";
    case Errc::range: return "range";
    case Errc::oracle_limit: return "oracle-limit";
    case Errc::shape: return "shape";
  }
  return "unknown";
}

void raise(Errc code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace hcons
