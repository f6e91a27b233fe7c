#pragma once

#include <string>

#include "varreg/discrepancies.hpp"
#include "varreg/functionals.hpp"
#include "varreg/regularizers.hpp"
#include "varreg/scheme.hpp"

namespace varreg {

/// Thrown for ids that name nothing known.
class UnknownId : public Error {
 public:
  using Error::Error;
};

/// "quartic", "squared", "entropy", "hinge2".
FunctionalPtr functional_by_id(const std::string& id);

/// "sqnorm", "l1", "abs_shift", or "<inner>+box:<lo>:<hi>".
RegularizerPtr regularizer_by_id(const std::string& id);

/// "sqnorm", "pnorm:<p>", "bregman1:<J>", "bregman2:<J>", "mismatch2d", "kl".
DiscrepancyPtr discrepancy_by_id(const std::string& id);

/// F = id on R, rho = bregman2:quartic, R(x) = |x + 1|.
VariationalScheme example24_scheme();

/// F = A, rho = |Ax - y|^2, R = |x|^2.
VariationalScheme hilbert_scheme(const Matrix& a);

}  // namespace varreg
