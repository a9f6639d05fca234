#pragma once

#include <stdexcept>
#include <string>

namespace qpsl {

// Error codes map onto CLI exit codes: usage/input problems vs. exceeded
// search budgets vs. everything else.
enum class errc {
  unknown_arc,
  folded_side_flip,
  two_cycle_at_vertex,
  rotation_impossible,
  normal_form_violation,
  non_trivial_degree2,
  missing_weight,
  budget_exceeded,
  laurent_violation,
  non_homogeneous,
  not_thin,
  not_in_span,
  precondition_violation,
  parse_error,
  invalid_input,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

} // namespace qpsl
