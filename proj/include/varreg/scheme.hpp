#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "varreg/discrepancies.hpp"
#include "varreg/ext_real.hpp"
#include "varreg/forward.hpp"
#include "varreg/point.hpp"
#include "varreg/regularizers.hpp"

namespace varreg {

/// Finite prefix of a data sequence y_n together with its candidate limit.
class DataSequence {
 public:
  DataSequence(std::vector<Point> terms, Point limit_candidate);

  [[nodiscard]] const std::vector<Point>& terms() const { return terms_; }
  [[nodiscard]] const Point& limit() const { return limit_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Terms at the given increasing indices (a subsequence).
  [[nodiscard]] DataSequence subsequence(std::span<const std::size_t> indices) const;

 private:
  std::vector<Point> terms_;
  Point limit_;
};

/// (F, rho, R). The convergence structure is represented by the predicates in
/// convergence.hpp rather than stored here.
class VariationalScheme {
 public:
  static constexpr std::size_t kDefaultProbes = 16;
  static constexpr std::uint64_t kDefaultProbeSeed = 20240229;

  /// Validates rho(y, y) = 0 on kDefaultProbes seeded probes in (0.1, 2)^m.
  VariationalScheme(ForwardPtr forward, DiscrepancyPtr discrepancy, RegularizerPtr regularizer);
  /// Validates rho(y, y) = 0 on the given probes instead.
  VariationalScheme(ForwardPtr forward, DiscrepancyPtr discrepancy, RegularizerPtr regularizer,
                    std::span<const Point> probes);

  [[nodiscard]] const ForwardOp& forward() const { return *forward_; }
  [[nodiscard]] const Discrepancy& discrepancy() const { return *discrepancy_; }
  [[nodiscard]] const Regularizer& regularizer() const { return *regularizer_; }
  [[nodiscard]] const ForwardPtr& forward_ptr() const { return forward_; }
  [[nodiscard]] const DiscrepancyPtr& discrepancy_ptr() const { return discrepancy_; }
  [[nodiscard]] const RegularizerPtr& regularizer_ptr() const { return regularizer_; }

  /// rho(F(x), y).
  [[nodiscard]] ExtReal data_fit(const Point& x, const Point& y) const;

 private:
  void validate(std::span<const Point> probes) const;

  ForwardPtr forward_;
  DiscrepancyPtr discrepancy_;
  RegularizerPtr regularizer_;
};

/// T_{alpha,y}(x) = rho(F(x), y) + alpha R(x), alpha > 0.
ExtReal scheme_objective(const VariationalScheme& s, const Point& x, const Point& y, double alpha);

/// Seeded probe points in (lo, hi)^dim.
std::vector<Point> make_probes(Eigen::Index dim, std::size_t count, std::uint64_t seed, double lo = 0.1,
                               double hi = 2.0);

}  // namespace varreg
