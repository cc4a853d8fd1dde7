#include <algorithm>
#include <cstdint>
#include <vector>

#include "nctorus/errors.hpp"
#include "nctorus/torus_element.hpp"

namespace nct {

namespace {

constexpr std::size_t kDenseLookupLimit = std::size_t{1} << 22;

struct Box {
  Mode lo;
  Mode hi;
  std::size_t volume() const {
    std::size_t v = 1;
    for (int j = 0; j < lo.dim(); ++j) v *= static_cast<std::size_t>(hi[j] - lo[j] + 1);
    return v;
  }
  bool contains(const Mode& p) const {
    for (int j = 0; j < lo.dim(); ++j) {
      if (p[j] < lo[j] || p[j] > hi[j]) return false;
    }
    return true;
  }
  std::size_t index(const Mode& p) const {
    std::size_t idx = 0;
    for (int j = 0; j < lo.dim(); ++j) idx = idx * static_cast<std::size_t>(hi[j] - lo[j] + 1) + static_cast<std::size_t>(p[j] - lo[j]);
    return idx;
  }
  Mode at(std::size_t idx) const {
    Mode p(lo.dim());
    for (int j = lo.dim() - 1; j >= 0; --j) {
      const auto side = static_cast<std::size_t>(hi[j] - lo[j] + 1);
      p[j] = lo[j] + static_cast<int>(idx % side);
      idx /= side;
    }
    return p;
  }
};

Box bounding_box(const std::vector<Mode>& modes) {
  Box box{modes.front(), modes.front()};
  for (const auto& p : modes) {
    for (int j = 0; j < p.dim(); ++j) {
      box.lo[j] = std::min(box.lo[j], p[j]);
      box.hi[j] = std::max(box.hi[j], p[j]);
    }
  }
  return box;
}

struct Flat {
  std::vector<Mode> modes;  // increasing order (map order)
  std::vector<Complex> values;
};

Flat flatten(const TorusElement& a) {
  Flat f;
  f.modes.reserve(a.size());
  f.values.reserve(a.size());
  for (const auto& [p, c] : a.coeffs()) {
    f.modes.push_back(p);
    f.values.push_back(c);
  }
  return f;
}

// Lookup of b's coefficients by mode: a dense array over b's bounding box when it
// is small enough, otherwise binary search in the sorted support.
class Lookup {
 public:
  explicit Lookup(const Flat& b) : b_(b), box_(bounding_box(b.modes)) {
    if (box_.volume() <= kDenseLookupLimit) {
      dense_.assign(box_.volume(), Complex{});
      for (std::size_t i = 0; i < b.modes.size(); ++i) dense_[box_.index(b.modes[i])] = b.values[i];
    }
  }

  // Returns false when q is not in the support.
  bool find(const Mode& q, Complex& out) const {
    if (!box_.contains(q)) return false;
    if (!dense_.empty()) {
      out = dense_[box_.index(q)];
      return out != Complex{};
    }
    auto it = std::lower_bound(b_.modes.begin(), b_.modes.end(), q);
    if (it == b_.modes.end() || *it != q) return false;
    out = b_.values[static_cast<std::size_t>(it - b_.modes.begin())];
    return true;
  }

  const Box& box() const { return box_; }

 private:
  const Flat& b_;
  Box box_;
  std::vector<Complex> dense_;
};

void require_same(const TorusElement& a, const TorusElement& b) {
  if (!a.same_algebra(b)) throw ContractViolation("mul: elements live in different algebras");
}

// Whether some pair sum leaves [-cap, cap]ⁿ. Per axis the extreme sums are attained
// by actual support points, so the bounding boxes decide this exactly.
bool overflows(const Box& a, const Box& b, int cap) {
  for (int j = 0; j < a.lo.dim(); ++j) {
    if (a.hi[j] + b.hi[j] > cap || a.lo[j] + b.lo[j] < -cap) return true;
  }
  return false;
}

}  // namespace

TorusElement mul(const TorusElement& a, const TorusElement& b) {
  require_same(a, b);
  TorusElement out = a.zero_like();
  out.mark_truncated(a.truncated() || b.truncated());
  if (a.is_zero() || b.is_zero()) return out;

  const ThetaMatrix& theta = a.theta();
  const int n = a.dim();
  const int cap = a.cap();
  const Flat fa = flatten(a);
  const Flat fb = flatten(b);
  const Lookup lookup(fb);
  const Box abox = bounding_box(fa.modes);
  out.mark_truncated(overflows(abox, lookup.box(), cap));

  // Candidate output modes inside the window, in increasing order.
  Box obox{Mode(n), Mode(n)};
  bool empty_box = false;
  for (int j = 0; j < n; ++j) {
    obox.lo[j] = std::max(abox.lo[j] + lookup.box().lo[j], -cap);
    obox.hi[j] = std::min(abox.hi[j] + lookup.box().hi[j], cap);
    empty_box = empty_box || obox.lo[j] > obox.hi[j];
  }
  if (empty_box) return out;

  std::vector<Mode> targets;
  const std::size_t pairs = fa.modes.size() * fb.modes.size();
  if (obox.volume() <= 4 * pairs + 64) {
    targets.reserve(obox.volume());
    for (std::size_t i = 0; i < obox.volume(); ++i) targets.push_back(obox.at(i));
  } else {
    targets.reserve(pairs);
    for (const auto& p : fa.modes) {
      for (const auto& q : fb.modes) {
        Mode r = p + q;
        if (r.degree() <= cap) targets.push_back(r);
      }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }

  std::vector<Complex> result(targets.size());
  const auto count = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < count; ++t) {
    const Mode& r = targets[static_cast<std::size_t>(t)];
    Complex acc{};
    for (std::size_t i = 0; i < fa.modes.size(); ++i) {
      const Mode q = r - fa.modes[i];
      Complex bq;
      if (!lookup.find(q, bq)) continue;
      acc += theta.phase(theta.cocycle_exponent(fa.modes[i], q)) * fa.values[i] * bq;
    }
    result[static_cast<std::size_t>(t)] = acc;
  }

  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (result[t] != Complex{}) out.set(targets[t], result[t]);
  }
  return out;
}

TorusElement mul_reference(const TorusElement& a, const TorusElement& b) {
  require_same(a, b);
  const ThetaMatrix& theta = a.theta();
  const int cap = a.cap();
  std::map<Mode, Complex> acc;
  bool truncated = a.truncated() || b.truncated();
  for (const auto& [p, ap] : a.coeffs()) {
    for (const auto& [q, bq] : b.coeffs()) {
      const Mode r = p + q;
      if (r.degree() > cap) {
        truncated = true;
        continue;
      }
      acc[r] += cocycle(theta, p, q) * ap * bq;
    }
  }
  TorusElement out = a.zero_like();
  for (const auto& [r, c] : acc) out.set(r, c);
  out.mark_truncated(truncated);
  return out;
}

}  // namespace nct
