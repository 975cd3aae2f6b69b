#pragma once

namespace hscomp {

// All floating-point tolerances live here; group/word arithmetic is exact and
// never consults these.
struct Tolerances {
  double exp_series = 5e-7;     // closed-form exp inner vs truncated series (N=20, |<z,z'>| <= 4)
  double algebraic = 1e-12;     // identities that hold up to rounding only
  double certificate = 1e-9;    // distortion certificate sandwich slack
  double gram_clip_rel = 1e-9;  // relative eigenvalue clip in the Gram factorization
  double cnd_form_rel = 1e-8;   // relative bound on centered quadratic forms
};

inline constexpr Tolerances tol{};

}  // namespace hscomp
