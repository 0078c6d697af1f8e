#pragma once

#include <stdexcept>
#include <string>

namespace g2lap {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define G2LAP_DECLARE_ERROR(Name) \
  struct Name : Error {           \
    using Error::Error;           \
  }

G2LAP_DECLARE_ERROR(DegreeError);
G2LAP_DECLARE_ERROR(InexactError);
G2LAP_DECLARE_ERROR(NonDiagonalError);
G2LAP_DECLARE_ERROR(DegenerateForm);
G2LAP_DECLARE_ERROR(NotInvariant);
G2LAP_DECLARE_ERROR(UnsupportedSymmetry);
G2LAP_DECLARE_ERROR(MissingGenerators);
G2LAP_DECLARE_ERROR(NotPositive);
G2LAP_DECLARE_ERROR(NotPositiveTarget);
G2LAP_DECLARE_ERROR(NewtonDiverged);
G2LAP_DECLARE_ERROR(NotCoclosed);
G2LAP_DECLARE_ERROR(NotEigenform);

#undef G2LAP_DECLARE_ERROR

}  // namespace g2lap
