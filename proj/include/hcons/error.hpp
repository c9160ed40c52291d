#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcons {

enum class Errc {
  invalid_child,
  unknown_identifier,
  usage,
  contract_violation,
  depth_exceeded,
  ill_ordered,
  unbound_variable,
  syntax,
  range,
  oracle_limit,
  shape,
};

std::string_view to_string(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace hcons
