#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "specband/kernel.hpp"

namespace specband {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Sorted, disjoint union of half-open intervals [lo, hi).
class Region {
 public:
  Region() = default;
  explicit Region(std::vector<Interval> intervals);
  static Region interval(double lo, double hi);

  bool empty() const { return intervals_.empty(); }
  bool contains(double x) const;
  double sup() const { return intervals_.empty() ? 0.0 : intervals_.back().hi; }
  const std::vector<Interval>& intervals() const { return intervals_; }

 private:
  std::vector<Interval> intervals_;
};

// Analytic description of a signal on the half-line.
class Generator {
 public:
  enum class Kind { Gaussian, Bump, Indicator, Transformed };

  static Generator gaussian(double center, double width);
  static Generator bump(double lo, double hi);
  static Generator indicator(Region region);
  // The transform of `inner` under `spec`, evaluated by quadrature.
  static Generator transformed(const Generator& inner, const KernelSpec& spec);

  double operator()(double x) const;

  Kind kind() const { return kind_; }
  std::string family() const;
  // Pieces of [0, inf) outside of which the generator is negligible (or zero).
  std::vector<Interval> support() const;

  double center() const { return p0_; }
  double width() const { return p1_; }
  const Region& region() const { return region_; }

 private:
  Kind kind_ = Kind::Gaussian;
  double p0_ = 0.0;
  double p1_ = 1.0;
  Region region_;
  std::shared_ptr<const Generator> inner_;
  KernelSpec spec_;
};

}  // namespace specband
