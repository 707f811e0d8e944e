// Typed errors shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace curvinv {

enum class errc {
  invalid_argument,       // malformed call (bad schedule, bad indices, ...)
  unknown_curve,          // catalog name not recognized
  invalid_params,         // catalog params outside the family's validity
  domain,                 // parameter / arclength outside the curve domain
  degenerate_curve,       // |x'| below the regularity floor
  degenerate_input,       // coincident points, collinear triple, ...
  inflection_point,       // kappa below floor, Frenet frame undefined
  conformal_degeneracy,   // nu below floor (circles, planar-critical points)
  degenerate_sphere,      // coplanar quadruple
  pole,                   // point at an inversion center
  capability,             // derivative order not available from this source
  out_of_region,          // cross-ratio pair violates the admissible region
  numerical,              // internal consistency check failed
  io,                     // file read/write failure
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace curvinv
