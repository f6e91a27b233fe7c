#include "varreg/registry.hpp"

#include <charconv>
#include <cmath>
#include <memory>

#include <fmt/format.h>

namespace varreg {

namespace {

double parse_number(const std::string& text, const std::string& context) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw UnknownId(fmt::format("'{}' is not a number in '{}'", text, context));
  }
  return v;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

FunctionalPtr functional_by_id(const std::string& id) {
  if (id == "quartic") return std::make_shared<QuarticFunctional>();
  if (id == "squared") return std::make_shared<SquaredFunctional>();
  if (id == "entropy") return std::make_shared<EntropyFunctional>();
  if (id == "hinge2") return std::make_shared<HingeSquaredFunctional>();
  throw UnknownId(fmt::format("unknown functional '{}'", id));
}

RegularizerPtr regularizer_by_id(const std::string& id) {
  if (const auto pos = id.find("+box:"); pos != std::string::npos) {
    const std::string bounds = id.substr(pos + 5);
    const auto colon = bounds.find(':');
    if (colon == std::string::npos) throw UnknownId(fmt::format("box regularizer '{}' needs lo:hi", id));
    return make_boxed(regularizer_by_id(id.substr(0, pos)), parse_number(bounds.substr(0, colon), id),
                      parse_number(bounds.substr(colon + 1), id));
  }
  if (id == "sqnorm") return make_sqnorm();
  if (id == "l1") return make_l1();
  if (id == "abs_shift") return make_abs_shift();
  throw UnknownId(fmt::format("unknown regularizer '{}'", id));
}

DiscrepancyPtr discrepancy_by_id(const std::string& id) {
  if (id == "sqnorm") return make_sqnorm_discrepancy();
  if (id == "mismatch2d") return make_coordinate_mismatch();
  if (id == "kl") return make_kl_discrepancy();
  if (starts_with(id, "pnorm:")) return make_power_norm(parse_number(id.substr(6), id));
  if (starts_with(id, "bregman1:")) return make_bregman_rho1(functional_by_id(id.substr(9)));
  if (starts_with(id, "bregman2:")) return make_bregman_rho2(functional_by_id(id.substr(9)));
  throw UnknownId(fmt::format("unknown discrepancy '{}'", id));
}

VariationalScheme example24_scheme() {
  return VariationalScheme(std::make_shared<ForwardOp>(ForwardOp::identity(1)), discrepancy_by_id("bregman2:quartic"),
                           make_abs_shift());
}

VariationalScheme hilbert_scheme(const Matrix& a) {
  return VariationalScheme(std::make_shared<ForwardOp>(ForwardOp::linear(a)), make_sqnorm_discrepancy(),
                           make_sqnorm());
}

}  // namespace varreg
