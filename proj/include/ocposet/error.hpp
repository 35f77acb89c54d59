#pragma once

#include <stdexcept>
#include <string>

namespace ocposet {

enum class Errc {
  duplicate_element,
  unknown_name,
  cycle_detected,
  unknown_catalog_name,
  size_limit_exceeded,
  element_mismatch,
  name_collision,
  non_transitive_witness,
  invalid_step,
  not_a_cycle,
  no_such_cycle,
  malformed_certificate,
  empty_type_set,
  center_gap_invalid,
  empty_input,
  not_twin_free,
  internal_trace_broken,
  kind_mismatch,
  io_error,
  parse_error,
  overflow,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// For conditions that are theorems of the underlying math: a violation is a bug
// in this library, not bad input.
inline void require_internal(bool ok, const char* what) {
  if (!ok) throw Error(Errc::internal, std::string("internal invariant broken: ") + what);
}

}  // namespace ocposet
