#include "varreg/scheme.hpp"

#include <random>

#include <fmt/format.h>

namespace varreg {

DataSequence::DataSequence(std::vector<Point> terms, Point limit_candidate)
    : terms_(std::move(terms)), limit_(std::move(limit_candidate)) {
  if (terms_.empty()) throw Error("data sequence must be nonempty");
  for (const auto& t : terms_) require_same_dim(t, limit_, "data sequence term");
}

DataSequence DataSequence::subsequence(std::span<const std::size_t> indices) const {
  std::vector<Point> sub;
  sub.reserve(indices.size());
  std::size_t last = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= terms_.size() || (k > 0 && indices[k] <= last)) {
      throw Error("subsequence indices must be increasing and in range");
    }
    last = indices[k];
    sub.push_back(terms_[indices[k]]);
  }
  return {std::move(sub), limit_};
}

VariationalScheme::VariationalScheme(ForwardPtr forward, DiscrepancyPtr discrepancy, RegularizerPtr regularizer)
    : forward_(std::move(forward)), discrepancy_(std::move(discrepancy)), regularizer_(std::move(regularizer)) {
  if (!forward_ || !discrepancy_ || !regularizer_) throw Error("scheme needs forward, discrepancy and regularizer");
  validate(make_probes(forward_->output_dim(), kDefaultProbes, kDefaultProbeSeed));
}

VariationalScheme::VariationalScheme(ForwardPtr forward, DiscrepancyPtr discrepancy, RegularizerPtr regularizer,
                                     std::span<const Point> probes)
    : forward_(std::move(forward)), discrepancy_(std::move(discrepancy)), regularizer_(std::move(regularizer)) {
  if (!forward_ || !discrepancy_ || !regularizer_) throw Error("scheme needs forward, discrepancy and regularizer");
  validate(probes);
}

void VariationalScheme::validate(std::span<const Point> probes) const {
  for (const auto& y : probes) {
    if (y.dim() != forward_->output_dim()) {
      throw DimensionMismatch(fmt::format("probe dimension {} does not match data dimension {}", y.dim(),
                                          forward_->output_dim()));
    }
    const ExtReal self = discrepancy_->eval(y, y);
    if (!(self == ExtReal(0.0))) {
      throw Error(fmt::format("discrepancy '{}' violates rho(y,y)=0 at a probe (value {})", discrepancy_->id(),
                              to_string(self)));
    }
  }
}

ExtReal VariationalScheme::data_fit(const Point& x, const Point& y) const {
  return discrepancy_->eval(forward_->apply(x), y);
}

ExtReal scheme_objective(const VariationalScheme& s, const Point& x, const Point& y, double alpha) {
  if (!(alpha > 0.0)) throw Error(fmt::format("alpha must be positive, got {}", alpha));
  return s.data_fit(x, y) + alpha * s.regularizer().value(x);
}

std::vector<Point> make_probes(Eigen::Index dim, std::size_t count, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = u(rng);
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace varreg
