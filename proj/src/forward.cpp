#include "varreg/forward.hpp"

#include <cmath>

#include <fmt/format.h>

#include "varreg/ext_real.hpp"

namespace varreg {

ForwardOp ForwardOp::identity(Eigen::Index dim) {
  if (dim <= 0) throw Error("identity operator needs positive dimension");
  ForwardOp op;
  op.kind_ = Kind::identity;
  op.name_ = "identity";
  op.dim_ = dim;
  return op;
}

ForwardOp ForwardOp::linear(Matrix a) {
  if (a.rows() == 0 || a.cols() == 0) throw Error("linear operator needs a nonempty matrix");
  if (!a.allFinite()) throw Error("linear operator matrix must be finite");
  ForwardOp op;
  op.kind_ = Kind::linear;
  op.name_ = "linear";
  op.a_ = std::move(a);
  return op;
}

ForwardOp ForwardOp::scalar_map(std::string name, std::function<double(double)> f,
                                std::function<double(double)> df) {
  if (!f || !df) throw Error("scalar_map needs a function and its derivative");
  ForwardOp op;
  op.kind_ = Kind::scalar_map;
  op.name_ = std::move(name);
  op.f_ = std::move(f);
  op.df_ = std::move(df);
  return op;
}

Eigen::Index ForwardOp::input_dim() const {
  switch (kind_) {
    case Kind::identity: return dim_;
    case Kind::linear: return a_.cols();
    case Kind::scalar_map: return 1;
  }
  return 0;
}

Eigen::Index ForwardOp::output_dim() const {
  switch (kind_) {
    case Kind::identity: return dim_;
    case Kind::linear: return a_.rows();
    case Kind::scalar_map: return 1;
  }
  return 0;
}

Point ForwardOp::apply(const Point& x) const {
  if (x.dim() != input_dim()) {
    throw DimensionMismatch(fmt::format("forward operator expects dimension {}, got {}", input_dim(), x.dim()));
  }
  switch (kind_) {
    case Kind::identity: return x;
    case Kind::linear: return Point(Vector(a_ * x.vec()));
    case Kind::scalar_map: return Point{f_(x[0])};
  }
  return x;
}

Point ForwardOp::adjoint_apply(const Point& y) const {
  if (y.dim() != output_dim()) {
    throw DimensionMismatch(fmt::format("adjoint expects dimension {}, got {}", output_dim(), y.dim()));
  }
  switch (kind_) {
    case Kind::identity: return y;
    case Kind::linear: return Point(Vector(a_.transpose() * y.vec()));
    case Kind::scalar_map: break;
  }
  throw Error("adjoint is only defined for linear operators");
}

Vector ForwardOp::jacobian_transpose(const Point& x, const Vector& g) const {
  switch (kind_) {
    case Kind::identity: return g;
    case Kind::linear: return a_.transpose() * g;
    case Kind::scalar_map: return Vector::Constant(1, df_(x[0]) * g[0]);
  }
  return g;
}

Matrix ForwardOp::matrix() const {
  switch (kind_) {
    case Kind::identity: return Matrix::Identity(dim_, dim_);
    case Kind::linear: return a_;
    case Kind::scalar_map: break;
  }
  throw Error("matrix() is only defined for linear operators");
}

ForwardOp scalar_map_by_name(const std::string& name) {
  if (name == "cube") {
    return ForwardOp::scalar_map(name, [](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; });
  }
  if (name == "sin") {
    return ForwardOp::scalar_map(name, [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); });
  }
  if (name.rfind("scale:", 0) == 0) {
    const double a = std::stod(name.substr(6));
    return ForwardOp::scalar_map(name, [a](double x) { return a * x; }, [a](double) { return a; });
  }
  throw Error(fmt::format("unknown scalar map '{}'", name));
}

}  // namespace varreg
