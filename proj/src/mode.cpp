#include "nctorus/mode.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "nctorus/errors.hpp"

namespace nct {

Mode::Mode(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) throw ContractViolation("mode dimension out of range");
}

Mode::Mode(std::initializer_list<int> values) : Mode(std::span<const int>(values.begin(), values.size())) {}

Mode::Mode(std::span<const int> values) : Mode(static_cast<int>(values.size())) {
  std::copy(values.begin(), values.end(), c_.begin());
}

Mode Mode::unit(int dim, int axis) {
  Mode m(dim);
  if (axis < 0 || axis >= dim) throw ContractViolation("axis out of range");
  m.c_[axis] = 1;
  return m;
}

bool Mode::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](int v) { return v == 0; });
}

int Mode::degree() const {
  int d = 0;
  for (int j = 0; j < dim_; ++j) d = std::max(d, std::abs(c_[j]));
  return d;
}

Mode Mode::operator-() const {
  Mode out(dim_);
  for (int j = 0; j < dim_; ++j) out.c_[j] = -c_[j];
  return out;
}

Mode operator+(const Mode& a, const Mode& b) {
  if (a.dim_ != b.dim_) throw ContractViolation("mode dimension mismatch");
  Mode out(a.dim_);
  for (int j = 0; j < a.dim_; ++j) out.c_[j] = a.c_[j] + b.c_[j];
  return out;
}

Mode operator-(const Mode& a, const Mode& b) { return a + (-b); }

std::string Mode::str() const {
  std::string s = "(";
  for (int j = 0; j < dim_; ++j) {
    if (j) s += ",";
    s += std::to_string(c_[j]);
  }
  return s + ")";
}

ModeWindow::ModeWindow(int dim, int cap) : dim_(dim), cap_(cap), size_(1) {
  if (dim < 1 || dim > kMaxDim) throw ContractViolation("window dimension out of range");
  if (cap < 0) throw ContractViolation("negative window cap");
  for (int j = 0; j < dim; ++j) size_ *= static_cast<std::size_t>(2 * cap + 1);
}

bool ModeWindow::contains(const Mode& p) const { return p.dim() == dim_ && p.degree() <= cap_; }

std::size_t ModeWindow::index(const Mode& p) const {
  if (!contains(p)) throw ContractViolation("mode " + p.str() + " outside window");
  const std::size_t side = 2 * static_cast<std::size_t>(cap_) + 1;
  std::size_t idx = 0;
  for (int j = 0; j < dim_; ++j) idx = idx * side + static_cast<std::size_t>(p[j] + cap_);
  return idx;
}

Mode ModeWindow::mode(std::size_t index) const {
  const std::size_t side = 2 * static_cast<std::size_t>(cap_) + 1;
  Mode p(dim_);
  for (int j = dim_ - 1; j >= 0; --j) {
    p[j] = static_cast<int>(index % side) - cap_;
    index /= side;
  }
  return p;
}

}  // namespace nct
